#include "symbreak/constructor.hpp"

#include <algorithm>
#include <cassert>

namespace symbreak {

std::string to_string(ConstructionCase c) {
  switch (c) {
    case ConstructionCase::I: return "I";
    case ConstructionCase::II: return "II";
    case ConstructionCase::IIISameComponent: return "III-same-component";
    case ConstructionCase::IIIDifferentComponents: return "III-different-components";
    case ConstructionCase::Fallback: return "fallback";
  }
  return "?";
}

namespace {

int edge_index(const ConstructionState& state, int u, int v) {
  const Edge key(u, v);
  const auto it = std::lower_bound(state.edge_list.begin(), state.edge_list.end(), key);
  if (it == state.edge_list.end() || !(*it == key)) throw Error("internal: missing edge in construction state");
  return static_cast<int>(it - state.edge_list.begin());
}

int local_id(const ConstructionState::ComponentInfo& comp, int global_vertex) {
  const auto it = std::lower_bound(comp.to_parent.begin(), comp.to_parent.end(), global_vertex);
  if (it == comp.to_parent.end() || *it != global_vertex) throw Error("internal: vertex not in component");
  return static_cast<int>(it - comp.to_parent.begin());
}

/// Vertex map representative-subgraph -> component-subgraph.
Permutation component_iso(const ConstructionState& state, const ConstructionState::ComponentInfo& comp) {
  const auto& rep = state.components[static_cast<size_t>(
      state.orbit_analysis[static_cast<size_t>(comp.orbit_id)].rep_component)];
  if (&rep == &comp) return Permutation::identity(comp.sub.vertex_count());
  auto iso = find_isomorphism(rep.sub, comp.sub);
  if (!iso) throw Error("internal: orbit components are not isomorphic");
  return *iso;
}

/// Writes a colouring given on the representative's labelling onto the
/// component's edges in the global state.
void paint_component(ConstructionState& state, int comp_idx, const EdgeColouring& on_rep) {
  auto& comp = state.components[static_cast<size_t>(comp_idx)];
  const Permutation iso = component_iso(state, comp);
  for (size_t i = 0; i < on_rep.edges.size(); ++i) {
    const int a = comp.to_parent[static_cast<size_t>(iso(on_rep.edges[i].u))];
    const int b = comp.to_parent[static_cast<size_t>(iso(on_rep.edges[i].v))];
    state.colour[static_cast<size_t>(edge_index(state, a, b))] = on_rep.colour[i];
  }
}

/// The component's internal colouring read back from the global state; all
/// internal edges must already be coloured.
EdgeColouring component_colouring(const ConstructionState& state, const ConstructionState::ComponentInfo& comp) {
  EdgeColouring c;
  c.colours = 2;
  c.edges = comp.sub.edges();
  c.colour.reserve(c.edges.size());
  for (const Edge& e : c.edges) {
    const int global = state.colour[static_cast<size_t>(
        edge_index(state, comp.to_parent[static_cast<size_t>(e.u)], comp.to_parent[static_cast<size_t>(e.v)]))];
    if (global == 0) throw Error("internal: component edge left uncoloured");
    c.colour.push_back(global);
  }
  return c;
}

/// Non-identity automorphisms of sub that are small and preserve col.
std::vector<Permutation> small_preservers(const Graph& sub, const EdgeColouring& col) {
  std::vector<Permutation> out;
  for (const Permutation& p : automorphism_group(sub).elements)
    if (!p.is_identity() && is_small(sub, p) && preserves(sub, col, p)) out.push_back(p);
  return out;
}

/// Preservation against a partial colouring: every pair of coloured edges
/// related by p must agree.
bool preserves_partial(const ConstructionState& state, const Permutation& p) {
  for (size_t i = 0; i < state.edge_list.size(); ++i) {
    if (state.colour[i] == 0) continue;
    const int j = edge_index(state, p(state.edge_list[i].u), p(state.edge_list[i].v));
    if (state.colour[static_cast<size_t>(j)] != 0 && state.colour[static_cast<size_t>(j)] != state.colour[i])
      return false;
  }
  return true;
}

void flag_gap(ConstructionState& state, const std::string& why) {
  state.gap = true;
  state.trace.notes.push_back("gap: " + why);
}

}  // namespace

ConstructionState prepare_construction(const Graph& g, const AutGroup* grp) {
  ConstructionState state;
  state.g = &g;
  state.aut = grp != nullptr ? *grp : automorphism_group(g);
  state.orbits = vertex_orbits(state.aut, g.vertex_count());
  state.edge_list = g.edges();
  state.colour.assign(state.edge_list.size(), 0);
  state.must_be_blue.assign(state.edge_list.size(), false);
  state.component_of_vertex.assign(static_cast<size_t>(g.vertex_count()), -1);

  state.orbit_analysis.resize(state.orbits.classes.size());
  for (size_t oid = 0; oid < state.orbits.classes.size(); ++oid) {
    for (VertexSet comp_set : connected_components(induced_subgraph(g, state.orbits.classes[oid]).graph)) {
      ConstructionState::ComponentInfo comp;
      // Components of the induced subgraph come back in local ids; remap.
      const std::vector<int> orbit_verts = state.orbits.classes[oid].to_vector();
      for (int local : comp_set.to_vector()) comp.verts.add(orbit_verts[static_cast<size_t>(local)]);
      comp.orbit_id = static_cast<int>(oid);
      InducedSubgraph sub = induced_subgraph(g, comp.verts);
      comp.to_parent = std::move(sub.to_parent);
      comp.sub = std::move(sub.graph);
      const int idx = static_cast<int>(state.components.size());
      for (int v : comp.verts.to_vector()) state.component_of_vertex[static_cast<size_t>(v)] = idx;
      state.components.push_back(std::move(comp));
      if (state.orbit_analysis[oid].rep_component < 0) state.orbit_analysis[oid].rep_component = idx;
    }

    auto& oa = state.orbit_analysis[oid];
    const auto& rep = state.components[static_cast<size_t>(oa.rep_component)];
    try {
      oa.classification = find_distinguishing_or_almost(rep.sub, 2);
    } catch (const SizeLimitError&) {
      state.trace.notes.push_back("orbit " + std::to_string(oid) + ": component too large for exhaustive classification");
      continue;
    }
    if (oa.classification.status == DistOrAlmostResult::Status::Distinguishing) {
      oa.has_distinguishing = true;
      oa.palette.push_back(*oa.classification.distinguishing);
      EdgeColouring swapped = rename_colours(oa.palette.front(), {2, 1});
      if (!rep.sub.edges().empty() && !coloured_isomorphic(rep.sub, oa.palette.front(), rep.sub, swapped))
        oa.palette.push_back(std::move(swapped));
    } else if (oa.classification.status == DistOrAlmostResult::Status::Almost) {
      for (const auto& cls : oa.classification.literal_classes)
        oa.palette.push_back(oa.classification.almost[static_cast<size_t>(cls.front())]);
      // Empirical probe of the dichotomy remark for regular graphs: orbit
      // components are vertex-transitive, hence regular.
      if (oa.classification.literal_classes.size() < 2 || oa.classification.renaming_classes.size() < 2)
        state.trace.notes.push_back(
            "dichotomy: orbit " + std::to_string(oid) + " component has no distinguishing 2-colouring and " +
            std::to_string(oa.classification.literal_classes.size()) + " literal / " +
            std::to_string(oa.classification.renaming_classes.size()) + " renaming almost classes");
    }
  }
  return state;
}

std::pair<int, VertexSet> choose_root(const Graph& g, const AutGroup& grp) {
  if (connected_components(g).size() != 1) throw Error("choose_root requires a connected graph");
  if (degree_profile(g).is_regular) throw Error("choose_root requires a non-regular graph");
  if (g.vertex_count() < 6) throw Error("choose_root requires order >= 6");
  ConstructionState state = prepare_construction(g, &grp);
  choose_root(state);
  return {state.x, state.orbit_x};
}

void choose_root(ConstructionState& state) {
  const Graph& g = *state.g;
  state.x = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (state.orbit_analysis[static_cast<size_t>(state.orbits.class_of[static_cast<size_t>(v)])].has_distinguishing) {
      state.x = v;
      break;
    }
  }
  state.orbit_x = state.orbits.classes[static_cast<size_t>(state.orbits.class_of[static_cast<size_t>(state.x)])];
  state.c_component = state.component_of_vertex[static_cast<size_t>(state.x)];
  state.trace.chosen_x = state.x;
  state.trace.orbit_x = state.orbit_x;
  state.trace.component_c = state.component_c();
}

void colour_orbit_components(ConstructionState& state) {
  auto& c_comp = state.components[static_cast<size_t>(state.c_component)];
  auto& c_oa = state.orbit_analysis[static_cast<size_t>(c_comp.orbit_id)];

  if (c_oa.palette.empty()) {
    flag_gap(state, "component of x admits neither a distinguishing nor an almost distinguishing 2-colouring");
    return;
  }

  if (c_oa.has_distinguishing) {
    c_comp.palette_choice = 0;
    paint_component(state, state.c_component, c_oa.palette.front());
  } else {
    // An almost colouring whose witness pair contains x; one exists whenever
    // any almost colouring does, because the component is vertex-transitive.
    const Permutation iso = component_iso(state, c_comp);
    const int x_local = local_id(c_comp, state.x);
    int chosen = -1;
    for (size_t i = 0; i < c_oa.classification.almost.size() && chosen < 0; ++i) {
      for (const auto& [a, b] : c_oa.classification.witness_pairs[i]) {
        if (iso(a) == x_local || iso(b) == x_local) {
          chosen = static_cast<int>(i);
          break;
        }
      }
    }
    if (chosen < 0) {
      flag_gap(state, "no almost distinguishing colouring of C carries a witness pair through x");
      chosen = c_oa.classification.literal_classes.front().front();
    }
    for (size_t cls = 0; cls < c_oa.classification.literal_classes.size(); ++cls)
      if (std::count(c_oa.classification.literal_classes[cls].begin(), c_oa.classification.literal_classes[cls].end(), chosen))
        c_comp.palette_choice = static_cast<int>(cls);
    paint_component(state, state.c_component, c_oa.classification.almost[static_cast<size_t>(chosen)]);
  }

  for (size_t ci = 0; ci < state.components.size(); ++ci) {
    auto& comp = state.components[ci];
    if (static_cast<int>(ci) == state.c_component) continue;
    auto& oa = state.orbit_analysis[static_cast<size_t>(comp.orbit_id)];
    if (oa.palette.empty()) {
      if (comp.sub.edge_count() > 0)
        flag_gap(state, "orbit component admits neither a distinguishing nor an almost distinguishing 2-colouring");
      continue;
    }
    int choice = 0;
    if (comp.orbit_id == c_comp.orbit_id) {
      // Sibling of C: avoid C's colouring class when the palette allows.
      if (static_cast<int>(oa.palette.size()) > 1)
        choice = (c_comp.palette_choice == 0) ? 1 : 0;
      else if (c_comp.palette_choice == 0)
        state.trace.notes.push_back("sibling of C forced onto C's colouring class");
    }
    comp.palette_choice = choice;
    paint_component(state, static_cast<int>(ci), oa.palette[static_cast<size_t>(choice)]);
  }
}

ConstructionCase resolve_case(ConstructionState& state) {
  const Graph& g = *state.g;
  const auto& c_comp = state.components[static_cast<size_t>(state.c_component)];
  const EdgeColouring col_c = component_colouring(state, c_comp);
  const std::vector<Permutation> threats = small_preservers(c_comp.sub, col_c);

  if (threats.empty()) {
    state.trace.case_tag = ConstructionCase::I;
    return ConstructionCase::I;
  }

  const int x_local = local_id(c_comp, state.x);
  int y_local = -1;
  for (const auto& [a, b] : common_swapped_pairs(threats)) {
    if (a == x_local) y_local = b;
    if (b == x_local) y_local = a;
    if (y_local >= 0) break;
  }
  if (y_local < 0) {
    flag_gap(state, "C is undistinguished but no witness partner y pairs with x");
    return ConstructionCase::Fallback;
  }
  state.y = c_comp.to_parent[static_cast<size_t>(y_local)];

  const std::uint64_t common_outside =
      g.neighbours(state.x) & g.neighbours(state.y) & ~state.orbit_x.bits();
  if (common_outside != 0) {
    const int v = __builtin_ctzll(common_outside);
    state.colour[static_cast<size_t>(edge_index(state, state.x, v))] = 1;
    state.colour[static_cast<size_t>(edge_index(state, state.y, v))] = 2;
    for (std::uint64_t b = common_outside; b; b &= b - 1)
      state.must_be_blue[static_cast<size_t>(edge_index(state, state.y, __builtin_ctzll(b)))] = true;
    state.trace.case_tag = ConstructionCase::II;
    return ConstructionCase::II;
  }

  // Case III: pair up neighbours of x outside C with neighbours of y mapped
  // onto them by colour-preserving small automorphisms of g.
  const VertexSet c_set = state.component_c();
  std::vector<std::pair<int, int>> pairs;
  for (const Permutation& p : small_automorphisms(g, state.aut)) {
    if (p.is_identity() || !preserves_partial(state, p)) continue;
    for (std::uint64_t b = g.neighbours(state.x) & ~c_set.bits(); b; b &= b - 1) {
      const int xp = __builtin_ctzll(b);
      const int yp = p(xp);
      if (yp != xp && ((g.neighbours(state.y) >> yp) & 1u) && !c_set.contains(yp))
        pairs.emplace_back(xp, yp);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  std::vector<std::pair<int, int>> same_component;
  for (const auto& [xp, yp] : pairs)
    if (state.component_of_vertex[static_cast<size_t>(xp)] == state.component_of_vertex[static_cast<size_t>(yp)])
      same_component.emplace_back(xp, yp);

  if (!same_component.empty()) {
    for (const auto& [xp, yp] : same_component) {
      state.colour[static_cast<size_t>(edge_index(state, state.x, xp))] = 1;
      state.colour[static_cast<size_t>(edge_index(state, state.y, yp))] = 2;
    }
    state.trace.case_tag = ConstructionCase::IIISameComponent;
    return ConstructionCase::IIISameComponent;
  }

  // All pairs cross distinct components: force the two components of each
  // pair onto different colouring classes, re-colouring where needed.
  if (!pairs.empty()) {
    std::vector<int> involved;
    for (const auto& [xp, yp] : pairs) {
      involved.push_back(state.component_of_vertex[static_cast<size_t>(xp)]);
      involved.push_back(state.component_of_vertex[static_cast<size_t>(yp)]);
    }
    std::sort(involved.begin(), involved.end());
    involved.erase(std::unique(involved.begin(), involved.end()), involved.end());

    auto in_conflict = [&](int comp_a, int comp_b) {
      for (const auto& [xp, yp] : pairs) {
        const int ca = state.component_of_vertex[static_cast<size_t>(xp)];
        const int cb = state.component_of_vertex[static_cast<size_t>(yp)];
        if ((ca == comp_a && cb == comp_b) || (ca == comp_b && cb == comp_a)) return true;
      }
      return false;
    };

    for (size_t i = 0; i < involved.size(); ++i) {
      auto& comp = state.components[static_cast<size_t>(involved[i])];
      const auto& oa = state.orbit_analysis[static_cast<size_t>(comp.orbit_id)];
      auto clashes = [&](int choice) {
        for (size_t j = 0; j < i; ++j) {
          const auto& other = state.components[static_cast<size_t>(involved[j])];
          if (other.orbit_id == comp.orbit_id && other.palette_choice == choice && in_conflict(involved[i], involved[j]))
            return true;
        }
        return false;
      };
      if (!clashes(comp.palette_choice)) continue;
      int pick = -1;
      for (int alt = 0; alt < static_cast<int>(oa.palette.size()); ++alt) {
        if (!clashes(alt)) {
          pick = alt;
          break;
        }
      }
      if (pick < 0) {
        flag_gap(state, "cannot assign non-isomorphic colourings across case III components");
        return ConstructionCase::Fallback;
      }
      comp.palette_choice = pick;
      paint_component(state, involved[i], oa.palette[static_cast<size_t>(pick)]);
    }
  } else {
    state.trace.notes.push_back("case III with no (x',y') pairs under preserving small automorphisms");
  }
  state.trace.case_tag = ConstructionCase::IIIDifferentComponents;
  return ConstructionCase::IIIDifferentComponents;
}

LayerEnumeration enumerate_layers(const Graph& g, VertexSet c, const AutGroup& grp) {
  const std::vector<int> dist = bfs_distance(g, c);
  for (int d : dist)
    if (d == kUnreachable) throw Error("enumerate_layers requires a connected graph");

  LayerEnumeration out;
  out.stabilizer = setwise_stabilizer(grp, c);
  const OrbitPartition orbs = vertex_orbits(out.stabilizer, g.vertex_count());
  for (const VertexSet& orbit : orbs.classes) {
    const std::vector<int> members = orbit.to_vector();
    const int d = dist[static_cast<size_t>(members.front())];
    for (int v : members)
      if (dist[static_cast<size_t>(v)] != d) throw Error("internal: stabilizer orbit spans several distances");
    out.layers.push_back({orbit, d});
  }
  std::sort(out.layers.begin(), out.layers.end(), [](const auto& a, const auto& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.orbit.min_vertex() < b.orbit.min_vertex();
  });
  return out;
}

void colour_back_edges(ConstructionState& state, const LayerEnumeration& layers) {
  const Graph& g = *state.g;
  std::vector<int> layer_of(static_cast<size_t>(g.vertex_count()), -1);
  for (size_t i = 0; i < layers.layers.size(); ++i)
    for (int v : layers.layers[i].orbit.to_vector()) layer_of[static_cast<size_t>(v)] = static_cast<int>(i);

  auto back_edges_of = [&](int v) {
    std::vector<int> out;
    for (std::uint64_t b = g.neighbours(v); b; b &= b - 1) {
      const int w = __builtin_ctzll(b);
      if (layer_of[static_cast<size_t>(w)] < layer_of[static_cast<size_t>(v)]) out.push_back(edge_index(state, v, w));
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  for (size_t li = 1; li < layers.layers.size(); ++li) {
    const InducedSubgraph layer_sub = induced_subgraph(g, layers.layers[li].orbit);
    for (VertexSet comp_local : connected_components(layer_sub.graph)) {
      ConstructionState::ComponentInfo d_comp;
      for (int l : comp_local.to_vector()) d_comp.verts.add(layer_sub.to_parent[static_cast<size_t>(l)]);
      InducedSubgraph sub = induced_subgraph(g, d_comp.verts);
      d_comp.to_parent = std::move(sub.to_parent);
      d_comp.sub = std::move(sub.graph);

      const std::vector<Permutation> threats = small_preservers(d_comp.sub, component_colouring(state, d_comp));
      if (!threats.empty()) {
        const auto pairs = common_swapped_pairs(threats);
        if (pairs.empty()) {
          flag_gap(state, "layer component undistinguished but has no witness pair");
          return;
        }
        const int a = d_comp.to_parent[static_cast<size_t>(pairs.front().first)];
        bool has_pink = false;
        for (int ei : back_edges_of(a))
          if (state.colour[static_cast<size_t>(ei)] == 1) has_pink = true;
        if (!has_pink) {
          int picked = -1;
          for (int ei : back_edges_of(a)) {
            if (state.colour[static_cast<size_t>(ei)] == 0 && !state.must_be_blue[static_cast<size_t>(ei)]) {
              picked = ei;
              break;
            }
          }
          if (picked < 0) {
            flag_gap(state, "pink back edge assignment blocked for witness vertex " + std::to_string(a));
            return;
          }
          state.colour[static_cast<size_t>(picked)] = 1;
          state.trace.back_edge_log.push_back({a, state.edge_list[static_cast<size_t>(picked)]});
        }
      }
      for (int v : d_comp.verts.to_vector())
        for (int ei : back_edges_of(v))
          if (state.colour[static_cast<size_t>(ei)] == 0) state.colour[static_cast<size_t>(ei)] = 2;
    }
  }

  for (int c : state.colour) {
    if (c == 0) {
      flag_gap(state, "back edge pass left an edge uncoloured");
      return;
    }
  }
}

std::pair<EdgeColouring, ConstructionTrace> construct(const Graph& g, const ConstructionOptions& opt) {
  if (g.vertex_count() < 6) throw Error("construct requires order >= 6");
  if (connected_components(g).size() != 1) throw Error("construct requires a connected graph");

  ConstructionState state;
  bool pipeline_ran = false;
  if (degree_profile(g).is_regular) {
    state.g = &g;
    state.aut = automorphism_group(g);
    state.trace.notes.push_back("regular graph routed directly to fallback");
  } else {
    state = prepare_construction(g);
    pipeline_ran = true;
    choose_root(state);
    colour_orbit_components(state);
    if (!state.gap) resolve_case(state);
    if (!state.gap) {
      const LayerEnumeration layers = enumerate_layers(g, state.component_c(), state.aut);
      colour_back_edges(state, layers);
    }
  }

  const std::vector<Permutation> smalls = small_automorphisms(g, state.aut);

  if (pipeline_ran && !state.gap) {
    EdgeColouring c;
    c.colours = 2;
    c.edges = state.edge_list;
    c.colour = state.colour;
    if (breaks_all(g, c, smalls)) {
      state.trace.verified = true;
      return {std::move(c), std::move(state.trace)};
    }
    state.trace.notes.push_back("constructed colouring failed verification; falling back");
  }

  auto witness = find_breaking_colouring(g, 2, smalls, opt.search);
  if (!witness)
    throw TheoremFalsification("no 2-colouring breaks the small automorphisms of " + to_graph6(g));
  state.trace.case_tag = ConstructionCase::Fallback;
  state.trace.verified = true;
  return {std::move(*witness), std::move(state.trace)};
}

}  // namespace symbreak
