#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "symbreak/automorphism.hpp"
#include "symbreak/graph.hpp"
#include "symbreak/permutation.hpp"

namespace symbreak {

/// Total edge colouring with colours 1..k, keyed on the owning graph's
/// canonical (u,v)-ascending edge order.
struct EdgeColouring {
  int colours = 1;          // k
  std::vector<Edge> edges;  // sorted ascending
  std::vector<int> colour;  // parallel to edges, values in 1..k

  static EdgeColouring uniform(const Graph& g, int value = 1, int k = 1);

  int colour_of(int u, int v) const;
  bool total_on(const Graph& g) const;
};

/// Parses/serializes the CLI colouring text format: one "u v colour" line per
/// edge, sorted by (u,v).
std::string to_colouring_text(const EdgeColouring& c);
EdgeColouring parse_colouring_text(const std::string& text, const Graph& g);

/// True iff p maps every edge to an edge of the same colour.
bool preserves(const Graph& g, const EdgeColouring& c, const Permutation& p);

/// True iff c breaks every permutation in targets (vacuously true for []).
bool breaks_all(const Graph& g, const EdgeColouring& c, const std::vector<Permutation>& targets);

struct AlmostWitness {
  enum class Status { Distinguishing, Witness, NotAlmostDistinguishing };
  Status status;
  std::optional<std::pair<int, int>> pair;  // least valid pair when Status::Witness
};

/// Classifies c against grp = Aut(g): no non-identity preserver means
/// distinguishing; otherwise looks for a pair {x,y} swapped by every
/// non-identity preserver.
AlmostWitness find_almost_distinguishing_witness(const Graph& g, const EdgeColouring& c, const AutGroup& grp);

/// All pairs {x,y} (x < y) such that every permutation in `preservers` swaps
/// x and y. Empty `preservers` yields no pairs by convention.
std::vector<std::pair<int, int>> common_swapped_pairs(const std::vector<Permutation>& preservers);

inline constexpr int kColouredIsoLimit = 12;

/// Colour-preserving isomorphism of coloured graphs by exhaustive bijection
/// search. Colour ids match literally; callers wanting renaming invariance
/// enumerate colour permutations themselves.
bool coloured_isomorphic(const Graph& g1, const EdgeColouring& c1, const Graph& g2, const EdgeColouring& c2);

/// Plain isomorphism search returning a vertex map g1 -> g2 if one exists.
std::optional<Permutation> find_isomorphism(const Graph& g1, const Graph& g2);

/// c with its colour ids renamed by `rename` (rename[old-1] = new).
EdgeColouring rename_colours(const EdgeColouring& c, const std::vector<int>& rename);

}  // namespace symbreak
