#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "symbreak/automorphism.hpp"
#include "symbreak/colouring.hpp"
#include "symbreak/graph.hpp"

namespace symbreak {

enum class IndexKind { Finite, Infinite, ExceedsMax };

enum class SearchMethod { NoSymmetryShortcut, HeuristicSearch, Exhaustive };

/// Outcome of an index computation. A finite value always comes with a
/// verifying witness; INFINITE means some target automorphism acts as the
/// identity on edges and so survives every colouring.
struct IndexResult {
  IndexKind kind = IndexKind::Finite;
  int value = 1;  // the index when Finite; the exhausted max_k when ExceedsMax
  std::optional<EdgeColouring> witness;
  SearchMethod method = SearchMethod::NoSymmetryShortcut;
};

struct SearchOptions {
  int budget = 64;  // heuristic restarts before the exhaustive phase
  std::optional<std::uint64_t> seed_override;
};

inline constexpr int kDefaultMaxColours = 4;

/// A k-colouring breaking every target, or nullopt when provably none
/// exists. Phase 1 is seeded pseudo-random sampling with single-edge flips
/// (seed derived from the graph6 encoding, so runs reproduce); phase 2 is
/// exhaustive base-k enumeration over the canonical edge order, pruning a
/// partial colouring only once some target's edge orbits are all decided and
/// monochromatic. The first exhaustive success is the least counter.
std::optional<EdgeColouring> find_breaking_colouring(const Graph& g, int k,
                                                     const std::vector<Permutation>& targets,
                                                     const SearchOptions& opt = {});

IndexResult distinguishing_index(const Graph& g, int max_k = kDefaultMaxColours, const SearchOptions& opt = {});
IndexResult small_distinguishing_index(const Graph& g, int max_k = kDefaultMaxColours, const SearchOptions& opt = {});

/// Overloads reusing an already-computed Aut(g).
IndexResult distinguishing_index(const Graph& g, const AutGroup& grp, int max_k = kDefaultMaxColours,
                                 const SearchOptions& opt = {});
IndexResult small_distinguishing_index(const Graph& g, const AutGroup& grp, int max_k = kDefaultMaxColours,
                                       const SearchOptions& opt = {});

inline constexpr int kDistOrAlmostEdgeLimit = 24;

/// Exhaustive classification of the k-colourings of a small graph: the least
/// distinguishing colouring if one exists, otherwise every almost
/// distinguishing colouring together with its witness pairs, grouped into
/// isomorphism classes under literal colour matching and under colour
/// renaming.
struct DistOrAlmostResult {
  enum class Status { Distinguishing, Almost, None };
  Status status = Status::None;
  std::optional<EdgeColouring> distinguishing;
  std::vector<EdgeColouring> almost;                            // counter order
  std::vector<std::vector<std::pair<int, int>>> witness_pairs;  // per almost colouring
  std::vector<std::vector<int>> literal_classes;                // indices into almost
  std::vector<std::vector<int>> renaming_classes;
};

DistOrAlmostResult find_distinguishing_or_almost(const Graph& g, int k);
DistOrAlmostResult find_distinguishing_or_almost(const Graph& g, const AutGroup& grp, int k);

/// Permutation of edge indices induced by p on g's canonical edge order.
std::vector<int> edge_action(const Graph& g, const Permutation& p);

bool edge_action_is_identity(const Graph& g, const Permutation& p);

/// Deterministic solver seed for a graph (FNV-1a over its graph6 encoding).
std::uint64_t graph_seed(const Graph& g);

}  // namespace symbreak
