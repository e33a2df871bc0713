#include "symbreak/solver.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace symbreak {

std::vector<int> edge_action(const Graph& g, const Permutation& p) {
  const std::vector<Edge> edges = g.edges();
  std::vector<int> action(edges.size());
  for (size_t i = 0; i < edges.size(); ++i) {
    const Edge mapped(p(edges[i].u), p(edges[i].v));
    const auto it = std::lower_bound(edges.begin(), edges.end(), mapped);
    if (it == edges.end() || !(*it == mapped)) throw Error("permutation is not an automorphism: edge image missing");
    action[i] = static_cast<int>(it - edges.begin());
  }
  return action;
}

bool edge_action_is_identity(const Graph& g, const Permutation& p) {
  const std::vector<int> action = edge_action(g, p);
  for (size_t i = 0; i < action.size(); ++i)
    if (action[i] != static_cast<int>(i)) return false;
  return true;
}

std::uint64_t graph_seed(const Graph& g) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : to_graph6(g)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

EdgeColouring to_edge_colouring(const Graph& g, const std::vector<int>& flat, int k) {
  EdgeColouring c;
  c.colours = k;
  c.edges = g.edges();
  c.colour = flat;
  return c;
}

int count_preserved(const std::vector<std::vector<int>>& actions, const std::vector<int>& colour) {
  int preserved = 0;
  for (const std::vector<int>& action : actions) {
    bool ok = true;
    for (size_t i = 0; i < action.size(); ++i) {
      if (colour[static_cast<size_t>(action[i])] != colour[i]) {
        ok = false;
        break;
      }
    }
    preserved += ok ? 1 : 0;
  }
  return preserved;
}

/// Pigeonhole certificate over a class of non-adjacent twins (identical open
/// neighbourhoods): all pairwise transpositions are automorphisms, and the
/// transposition of u,v is preserved by c unless the colour vectors
/// (c(u,w))_w and (c(v,w))_w over the shared neighbourhood differ. When every
/// pairwise transposition is a target and k^deg < class size, some pair of
/// vectors must collide, so no breaking k-colouring exists.
bool twin_pigeonhole_blocks(const Graph& g, int k, const std::vector<Permutation>& targets) {
  const int n = g.vertex_count();
  if (n < 2 || targets.empty()) return false;

  auto transposition_targeted = [&](int u, int v) {
    for (const Permutation& p : targets) {
      bool match = true;
      for (int w = 0; w < n && match; ++w) {
        const int expect = (w == u) ? v : (w == v) ? u : w;
        if (p(w) != expect) match = false;
      }
      if (match) return true;
    }
    return false;
  };

  for (int rep = 0; rep < n; ++rep) {
    std::vector<int> cls{rep};
    for (int v = rep + 1; v < n; ++v)
      if (g.neighbours(v) == g.neighbours(rep)) cls.push_back(v);
    if (cls.size() < 2) continue;
    bool all_targeted = true;
    for (size_t i = 0; i < cls.size() && all_targeted; ++i)
      for (size_t j = i + 1; j < cls.size() && all_targeted; ++j)
        if (!transposition_targeted(cls[i], cls[j])) all_targeted = false;
    if (!all_targeted) continue;
    double room = 1.0;
    for (int s = 0; s < g.degree(rep) && room < 1e18; ++s) room *= k;
    if (room < static_cast<double>(cls.size())) return true;
  }
  return false;
}

struct ExhaustiveSearch {
  int k;
  int m;
  const std::vector<std::vector<int>>& actions;
  std::vector<int> colour;

  // Per-target orbit bookkeeping for the pruning rule.
  std::vector<std::vector<int>> orbit_of;   // target -> edge -> orbit id
  std::vector<int> orbit_base;              // target -> offset into orbit_colour
  std::vector<int> orbit_colour;            // flattened first-colour per orbit, 0 = unset
  std::vector<int> broken_at;               // target -> depth it broke, -1 = alive
  std::vector<int> last_multi_edge;         // target -> max edge index in a multi-edge orbit

  bool found = false;

  ExhaustiveSearch(int colours, const std::vector<std::vector<int>>& edge_actions, int edge_count)
      : k(colours), m(edge_count), actions(edge_actions) {
    colour.assign(static_cast<size_t>(m), 0);
    const size_t t = actions.size();
    orbit_of.resize(t);
    orbit_base.resize(t);
    broken_at.assign(t, -1);
    last_multi_edge.assign(t, -1);
    int total_orbits = 0;
    for (size_t ti = 0; ti < t; ++ti) {
      const std::vector<int>& action = actions[ti];
      std::vector<int>& orb = orbit_of[ti];
      orb.assign(static_cast<size_t>(m), -1);
      int next = 0;
      for (int e = 0; e < m; ++e) {
        if (orb[static_cast<size_t>(e)] >= 0) continue;
        int size = 0;
        for (int cur = e; orb[static_cast<size_t>(cur)] < 0; cur = action[static_cast<size_t>(cur)]) {
          orb[static_cast<size_t>(cur)] = next;
          ++size;
        }
        if (size > 1) {
          int cur = e;
          do {
            last_multi_edge[ti] = std::max(last_multi_edge[ti], cur);
            cur = action[static_cast<size_t>(cur)];
          } while (cur != e);
        }
        ++next;
      }
      orbit_base[ti] = total_orbits;
      total_orbits += next;
    }
    orbit_colour.assign(static_cast<size_t>(total_orbits), 0);
  }

  // Returns false when this branch is dominated by a guaranteed-preserved
  // target and must backtrack.
  bool descend(int depth) {
    if (depth == m) {
      for (size_t ti = 0; ti < actions.size(); ++ti)
        if (broken_at[ti] < 0) return false;
      found = true;
      return true;
    }
    for (int c = 1; c <= k; ++c) {
      colour[static_cast<size_t>(depth)] = c;
      std::vector<std::pair<size_t, int>> journal;  // (target, orbit slot) colours set now
      bool dead = false;
      for (size_t ti = 0; ti < actions.size() && !dead; ++ti) {
        if (broken_at[ti] >= 0) continue;
        const int slot = orbit_base[ti] + orbit_of[ti][static_cast<size_t>(depth)];
        int& oc = orbit_colour[static_cast<size_t>(slot)];
        if (oc == 0) {
          oc = c;
          journal.emplace_back(ti, slot);
        } else if (oc != c) {
          broken_at[ti] = depth;
        }
        if (broken_at[ti] < 0 && depth >= last_multi_edge[ti]) dead = true;  // target now preserved for good
      }
      if (!dead && descend(depth + 1)) return true;
      for (auto& [ti, slot] : journal) orbit_colour[static_cast<size_t>(slot)] = 0;
      for (size_t ti = 0; ti < actions.size(); ++ti)
        if (broken_at[ti] == depth) broken_at[ti] = -1;
    }
    colour[static_cast<size_t>(depth)] = 0;
    return false;
  }
};

std::optional<std::vector<int>> heuristic_phase(const Graph& g, int k, const std::vector<std::vector<int>>& actions,
                                                const SearchOptions& opt) {
  const int m = static_cast<int>(g.edges().size());
  const std::uint64_t seed = opt.seed_override.value_or(graph_seed(g) ^ (static_cast<std::uint64_t>(k) * 0x9e3779b97f4a7c15ULL));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(1, k);

  std::vector<int> colour(static_cast<size_t>(m));
  std::vector<int> order(static_cast<size_t>(m));
  std::iota(order.begin(), order.end(), 0);

  for (int attempt = 0; attempt < opt.budget; ++attempt) {
    for (int& c : colour) c = pick(rng);
    int score = count_preserved(actions, colour);
    bool improved = true;
    while (score > 0 && improved) {
      improved = false;
      std::shuffle(order.begin(), order.end(), rng);
      for (int e : order) {
        const int old = colour[static_cast<size_t>(e)];
        for (int c = 1; c <= k && score > 0; ++c) {
          if (c == old) continue;
          colour[static_cast<size_t>(e)] = c;
          const int s = count_preserved(actions, colour);
          if (s < score) {
            score = s;
            improved = true;
            break;
          }
          colour[static_cast<size_t>(e)] = old;
        }
        if (score == 0) break;
      }
    }
    if (score == 0) return colour;
  }
  return std::nullopt;
}

struct BreakingOutcome {
  std::optional<std::vector<int>> colour;
  SearchMethod method = SearchMethod::HeuristicSearch;
};

BreakingOutcome find_breaking_flat(const Graph& g, int k, const std::vector<Permutation>& targets,
                                   const SearchOptions& opt) {
  const int m = g.edge_count();
  if (targets.empty()) return {std::vector<int>(static_cast<size_t>(m), 1), SearchMethod::NoSymmetryShortcut};
  if (m == 0) return {std::nullopt, SearchMethod::Exhaustive};  // the empty colouring breaks nothing

  std::vector<std::vector<int>> actions;
  actions.reserve(targets.size());
  for (const Permutation& p : targets) {
    actions.push_back(edge_action(g, p));
    bool identity = true;
    for (size_t i = 0; i < actions.back().size() && identity; ++i)
      if (actions.back()[i] != static_cast<int>(i)) identity = false;
    if (identity) return {std::nullopt, SearchMethod::Exhaustive};  // preserved by every colouring
  }

  if (twin_pigeonhole_blocks(g, k, targets)) return {std::nullopt, SearchMethod::Exhaustive};

  if (auto flat = heuristic_phase(g, k, actions, opt)) return {std::move(flat), SearchMethod::HeuristicSearch};

  ExhaustiveSearch search(k, actions, m);
  search.descend(0);
  if (!search.found) return {std::nullopt, SearchMethod::Exhaustive};
  return {std::move(search.colour), SearchMethod::Exhaustive};
}

IndexResult index_over_targets(const Graph& g, const std::vector<Permutation>& targets, int max_k,
                               const SearchOptions& opt) {
  IndexResult r;
  if (targets.empty()) {
    r.kind = IndexKind::Finite;
    r.value = 1;
    r.witness = EdgeColouring::uniform(g);
    r.method = SearchMethod::NoSymmetryShortcut;
    return r;
  }
  for (const Permutation& p : targets) {
    if (edge_action_is_identity(g, p)) {
      r.kind = IndexKind::Infinite;
      r.value = 0;
      r.method = SearchMethod::NoSymmetryShortcut;
      return r;
    }
  }
  for (int k = 2; k <= max_k; ++k) {
    BreakingOutcome out = find_breaking_flat(g, k, targets, opt);
    if (out.colour) {
      r.kind = IndexKind::Finite;
      r.value = k;
      r.witness = to_edge_colouring(g, *out.colour, k);
      r.method = out.method;
      if (!breaks_all(g, *r.witness, targets)) throw Error("internal: index witness failed verification");
      return r;
    }
  }
  r.kind = IndexKind::ExceedsMax;
  r.value = max_k;
  r.method = SearchMethod::Exhaustive;
  return r;
}

std::vector<Permutation> non_identity(const AutGroup& grp) {
  std::vector<Permutation> out;
  out.reserve(grp.elements.size());
  for (const Permutation& p : grp.elements)
    if (!p.is_identity()) out.push_back(p);
  return out;
}

}  // namespace

std::optional<EdgeColouring> find_breaking_colouring(const Graph& g, int k, const std::vector<Permutation>& targets,
                                                     const SearchOptions& opt) {
  if (k < 1) throw Error("colour count must be positive");
  BreakingOutcome out = find_breaking_flat(g, k, targets, opt);
  if (!out.colour) return std::nullopt;
  EdgeColouring c = to_edge_colouring(g, *out.colour, k);
  if (!breaks_all(g, c, targets)) throw Error("internal: breaking colouring failed verification");
  return c;
}

IndexResult distinguishing_index(const Graph& g, const AutGroup& grp, int max_k, const SearchOptions& opt) {
  return index_over_targets(g, non_identity(grp), max_k, opt);
}

IndexResult small_distinguishing_index(const Graph& g, const AutGroup& grp, int max_k, const SearchOptions& opt) {
  return index_over_targets(g, small_automorphisms(g, grp), max_k, opt);
}

IndexResult distinguishing_index(const Graph& g, int max_k, const SearchOptions& opt) {
  return distinguishing_index(g, automorphism_group(g), max_k, opt);
}

IndexResult small_distinguishing_index(const Graph& g, int max_k, const SearchOptions& opt) {
  return small_distinguishing_index(g, automorphism_group(g), max_k, opt);
}

DistOrAlmostResult find_distinguishing_or_almost(const Graph& g, const AutGroup& grp, int k) {
  const int m = g.edge_count();
  if (m > kDistOrAlmostEdgeLimit)
    throw SizeLimitError("exhaustive colouring classification limited to " + std::to_string(kDistOrAlmostEdgeLimit) + " edges");

  DistOrAlmostResult result;
  const std::vector<Permutation> nontrivial = non_identity(grp);

  std::vector<int> flat(static_cast<size_t>(m), 1);
  for (;;) {
    EdgeColouring c = to_edge_colouring(g, flat, k);
    std::vector<Permutation> preservers;
    for (const Permutation& p : nontrivial)
      if (preserves(g, c, p)) preservers.push_back(p);
    if (preservers.empty()) {
      result.status = DistOrAlmostResult::Status::Distinguishing;
      result.distinguishing = std::move(c);
      return result;
    }
    if (auto pairs = common_swapped_pairs(preservers); !pairs.empty()) {
      result.almost.push_back(std::move(c));
      result.witness_pairs.push_back(std::move(pairs));
    }
    // Advance the base-k counter; the first edge is the most significant
    // digit, matching the exhaustive search's assignment order.
    int pos = m - 1;
    while (pos >= 0 && flat[static_cast<size_t>(pos)] == k) flat[static_cast<size_t>(pos--)] = 1;
    if (pos < 0) break;
    ++flat[static_cast<size_t>(pos)];
  }

  if (result.almost.empty()) {
    result.status = DistOrAlmostResult::Status::None;
    return result;
  }
  result.status = DistOrAlmostResult::Status::Almost;

  // Group into isomorphism classes, representatives in counter order.
  auto group_by = [&](auto&& same_class) {
    std::vector<std::vector<int>> classes;
    for (size_t i = 0; i < result.almost.size(); ++i) {
      bool placed = false;
      for (auto& cls : classes) {
        if (same_class(result.almost[static_cast<size_t>(cls.front())], result.almost[i])) {
          cls.push_back(static_cast<int>(i));
          placed = true;
          break;
        }
      }
      if (!placed) classes.push_back({static_cast<int>(i)});
    }
    return classes;
  };

  result.literal_classes = group_by([&](const EdgeColouring& a, const EdgeColouring& b) {
    return coloured_isomorphic(g, a, g, b);
  });
  result.renaming_classes = group_by([&](const EdgeColouring& a, const EdgeColouring& b) {
    std::vector<int> rename(static_cast<size_t>(k));
    std::iota(rename.begin(), rename.end(), 1);
    do {
      if (coloured_isomorphic(g, rename_colours(a, rename), g, b)) return true;
    } while (std::next_permutation(rename.begin(), rename.end()));
    return false;
  });
  return result;
}

DistOrAlmostResult find_distinguishing_or_almost(const Graph& g, int k) {
  return find_distinguishing_or_almost(g, automorphism_group(g), k);
}

}  // namespace symbreak
