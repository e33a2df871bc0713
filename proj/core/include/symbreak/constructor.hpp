#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symbreak/automorphism.hpp"
#include "symbreak/colouring.hpp"
#include "symbreak/graph.hpp"
#include "symbreak/solver.hpp"

namespace symbreak {

/// Raised when even the exhaustive fallback finds no 2-colouring breaking the
/// small automorphisms of a connected graph of order >= 6. Reaching this is a
/// reportable event, never a silent failure.
class TheoremFalsification : public Error {
public:
  using Error::Error;
};

enum class ConstructionCase { I, II, IIISameComponent, IIIDifferentComponents, Fallback };

std::string to_string(ConstructionCase c);

struct LayerEnumeration {
  struct Layer {
    VertexSet orbit;
    int distance;  // common BFS distance of the orbit to C
  };
  std::vector<Layer> layers;  // ordered by (distance, least member); layers[0] = C
  AutGroup stabilizer;        // automorphisms fixing C setwise
};

struct BackEdgeChoice {
  int vertex;
  Edge pink_edge;
};

struct ConstructionTrace {
  int chosen_x = -1;
  VertexSet orbit_x;
  VertexSet component_c;
  ConstructionCase case_tag = ConstructionCase::Fallback;
  std::vector<BackEdgeChoice> back_edge_log;
  bool verified = false;
  std::string colour_iso_reading = "literal";
  std::vector<std::string> notes;  // construction gaps, fallback reason, dichotomy observations
};

/// Shared state of the staged construction pipeline. Stages mutate it in
/// order; `gap` flags a step that could not follow the procedure, routing
/// construct() to the solver fallback.
struct ConstructionState {
  const Graph* g = nullptr;
  AutGroup aut;
  OrbitPartition orbits;

  std::vector<Edge> edge_list;     // canonical order
  std::vector<int> colour;         // per edge index: 0 = uncoloured, else 1 (pink) or 2 (blue)
  std::vector<bool> must_be_blue;  // Case II forward constraint, per edge index

  struct ComponentInfo {
    VertexSet verts;
    int orbit_id = -1;
    std::vector<int> to_parent;
    Graph sub;
    int palette_choice = -1;  // index into the orbit's colouring palette
  };
  std::vector<ComponentInfo> components;  // grouped by orbit, then by least member
  std::vector<int> component_of_vertex;

  /// Analysis of one representative component per orbit (components of one
  /// orbit are pairwise isomorphic). The palette lists pairwise
  /// non-isomorphic (literal colour matching) candidate colourings.
  struct OrbitAnalysis {
    int rep_component = -1;
    bool has_distinguishing = false;
    DistOrAlmostResult classification;
    std::vector<EdgeColouring> palette;  // on the representative's labelling
  };
  std::vector<OrbitAnalysis> orbit_analysis;  // per orbit id

  int x = -1;
  VertexSet orbit_x;
  int c_component = -1;  // index into components
  int y = -1;

  bool gap = false;
  ConstructionTrace trace;

  VertexSet component_c() const {
    return c_component >= 0 ? components[static_cast<size_t>(c_component)].verts : VertexSet();
  }
};

/// Builds group, orbits, per-orbit component lists and representative
/// colouring analyses for the staged pipeline. A precomputed group may be
/// passed to avoid recomputation.
ConstructionState prepare_construction(const Graph& g, const AutGroup* grp = nullptr);

/// The root choice of the procedure: the least vertex whose orbit induces
/// components admitting a distinguishing 2-colouring, else the least vertex.
/// Requires g connected, not regular, order >= 6.
std::pair<int, VertexSet> choose_root(const Graph& g, const AutGroup& grp);
void choose_root(ConstructionState& state);

/// Colours every intra-orbit edge: C by a distinguishing colouring when one
/// exists, else an almost distinguishing one whose witness pair contains x;
/// siblings of C by a colouring not isomorphic to C's when possible; every
/// other orbit's components by a distinguishing or almost colouring.
void colour_orbit_components(ConstructionState& state);

/// Case analysis on C: Case I when no small automorphism of C survives the
/// partial colouring, else the x/y repair of Case II (common neighbour
/// outside the orbit) or Case III.
ConstructionCase resolve_case(ConstructionState& state);

/// Orbits of the setwise stabilizer of C, ordered by (distance to C, least
/// member). Requires g connected.
LayerEnumeration enumerate_layers(const Graph& g, VertexSet c, const AutGroup& grp);

/// Colours all remaining back edges layer by layer; pre-coloured edges are
/// kept. Undistinguished layer components get one pink back edge on the
/// witness vertex, everything else blue.
void colour_back_edges(ConstructionState& state, const LayerEnumeration& layers);

struct ConstructionOptions {
  SearchOptions search;  // used by the fallback solver
};

/// Runs the full pipeline on a connected graph of order >= 6, verifies the
/// output against the small automorphisms, and falls back to solver search on
/// any gap or verification failure. The returned colouring always verifies;
/// throws TheoremFalsification if even exhaustive search finds no 2-colouring.
std::pair<EdgeColouring, ConstructionTrace> construct(const Graph& g, const ConstructionOptions& opt = {});

}  // namespace symbreak
