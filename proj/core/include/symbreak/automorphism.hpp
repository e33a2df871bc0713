#pragma once

#include <vector>

#include "symbreak/graph.hpp"
#include "symbreak/permutation.hpp"

namespace symbreak {

/// Complete element list of an automorphism group, lexicographically sorted
/// by image array. For the desk-scale graphs this artifact targets the full
/// list is affordable and the colouring checks need to walk it anyway.
struct AutGroup {
  std::vector<Permutation> elements;

  std::size_t order() const { return elements.size(); }
};

struct OrbitPartition {
  std::vector<VertexSet> classes;  // ordered by least member
  std::vector<int> class_of;       // vertex -> index into classes
};

inline constexpr int kDefaultEnumerationLimit = 12;

bool is_automorphism(const Graph& g, const Permutation& p);

/// Every automorphism of g, found by backtracking over images constrained to
/// an equitable degree-refinement partition. Rejects graphs larger than
/// `enumeration_limit` instead of approximating.
AutGroup automorphism_group(const Graph& g, int enumeration_limit = kDefaultEnumerationLimit);

/// True iff p moves some vertex to one of its neighbours.
bool is_small(const Graph& g, const Permutation& p);

/// The small elements of grp, in the group's (lexicographic) order.
std::vector<Permutation> small_automorphisms(const Graph& g, const AutGroup& grp);

OrbitPartition vertex_orbits(const AutGroup& grp, int n);

/// Subgroup fixing s setwise, as a complete element list.
AutGroup setwise_stabilizer(const AutGroup& grp, VertexSet s);

/// Equitable refinement of the degree partition: per-vertex class ids,
/// refined by neighbour-class counts to a fixed point. Automorphisms of g
/// preserve these classes; exposed for reuse by search code.
std::vector<int> equitable_classes(const Graph& g);

}  // namespace symbreak
