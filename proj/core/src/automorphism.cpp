#include "symbreak/automorphism.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace symbreak {

bool is_automorphism(const Graph& g, const Permutation& p) {
  const int n = g.vertex_count();
  if (p.degree() != n) throw Error("permutation length does not match graph order");
  for (int u = 0; u < n; ++u) {
    // Row test: neighbours of u must map exactly onto neighbours of p(u).
    std::uint64_t mapped = 0;
    for (std::uint64_t b = g.neighbours(u); b; b &= b - 1) mapped |= std::uint64_t{1} << p(__builtin_ctzll(b));
    if (mapped != g.neighbours(p(u))) return false;
  }
  return true;
}

std::vector<int> equitable_classes(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> cls(static_cast<size_t>(n), 0);
  if (n == 0) return cls;

  // Initial partition by degree.
  {
    std::map<int, int> ids;
    for (int v = 0; v < n; ++v) ids.emplace(g.degree(v), 0);
    int next = 0;
    for (auto& [deg, id] : ids) id = next++;
    for (int v = 0; v < n; ++v) cls[static_cast<size_t>(v)] = ids[g.degree(v)];
  }

  // Refine by neighbour-class count vectors until stable.
  for (;;) {
    int classes = *std::max_element(cls.begin(), cls.end()) + 1;
    std::vector<std::vector<int>> sig(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(classes + 1), 0));
    for (int v = 0; v < n; ++v) {
      sig[static_cast<size_t>(v)][0] = cls[static_cast<size_t>(v)];
      for (std::uint64_t b = g.neighbours(v); b; b &= b - 1)
        ++sig[static_cast<size_t>(v)][static_cast<size_t>(1 + cls[static_cast<size_t>(__builtin_ctzll(b))])];
    }
    std::map<std::vector<int>, int> ids;
    for (int v = 0; v < n; ++v) ids.emplace(sig[static_cast<size_t>(v)], 0);
    int next = 0;
    for (auto& [key, id] : ids) id = next++;
    bool changed = false;
    for (int v = 0; v < n; ++v) {
      const int id = ids[sig[static_cast<size_t>(v)]];
      if (id != cls[static_cast<size_t>(v)]) changed = true;
      cls[static_cast<size_t>(v)] = id;
    }
    if (!changed) break;
  }
  return cls;
}

namespace {

// Memory guard for pathological inputs near the order limit: the complete
// graph on 12 vertices has 12! elements and cannot be materialized.
constexpr std::size_t kMaxEnumeratedElements = 10'000'000;

struct AutSearch {
  const Graph& g;
  int n;
  std::vector<int> cls;            // equitable class per vertex
  std::vector<int> order;          // source vertices in assignment order
  std::vector<int> img;            // partial image, -1 = unassigned
  std::uint64_t used = 0;          // image vertices taken
  std::uint64_t placed = 0;        // source vertices assigned
  std::vector<std::vector<int>> out;

  explicit AutSearch(const Graph& graph) : g(graph), n(graph.vertex_count()), cls(equitable_classes(graph)) {
    order.resize(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    // Assign tightly-constrained (small, early) classes first, ties by id.
    std::vector<int> class_size(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v) ++class_size[static_cast<size_t>(cls[static_cast<size_t>(v)])];
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const int ca = cls[static_cast<size_t>(a)], cb = cls[static_cast<size_t>(b)];
      if (class_size[static_cast<size_t>(ca)] != class_size[static_cast<size_t>(cb)])
        return class_size[static_cast<size_t>(ca)] < class_size[static_cast<size_t>(cb)];
      if (ca != cb) return ca < cb;
      return a < b;
    });
    img.assign(static_cast<size_t>(n), -1);
  }

  void run() {
    if (n == 0) {
      out.push_back({});
      return;
    }
    descend(0);
    std::sort(out.begin(), out.end());
  }

  void descend(int depth) {
    if (depth == n) {
      if (out.size() >= kMaxEnumeratedElements)
        throw SizeLimitError("automorphism group too large to enumerate in full");
      out.push_back(img);
      return;
    }
    const int v = order[static_cast<size_t>(depth)];
    // Image of v must be in v's equitable class and consistent with every
    // already-placed vertex.
    std::uint64_t mapped_nbrs = 0;   // images of placed neighbours of v
    std::uint64_t placed_images = 0; // images of all placed vertices
    for (std::uint64_t b = placed; b; b &= b - 1) {
      const int u = __builtin_ctzll(b);
      placed_images |= std::uint64_t{1} << img[static_cast<size_t>(u)];
      if (g.adjacent(v, u)) mapped_nbrs |= std::uint64_t{1} << img[static_cast<size_t>(u)];
    }
    for (int w = 0; w < n; ++w) {
      if ((used >> w) & 1u) continue;
      if (cls[static_cast<size_t>(w)] != cls[static_cast<size_t>(v)]) continue;
      if ((g.neighbours(w) & placed_images) != mapped_nbrs) continue;
      img[static_cast<size_t>(v)] = w;
      used |= std::uint64_t{1} << w;
      placed |= std::uint64_t{1} << v;
      descend(depth + 1);
      placed &= ~(std::uint64_t{1} << v);
      used &= ~(std::uint64_t{1} << w);
      img[static_cast<size_t>(v)] = -1;
    }
  }
};

}  // namespace

AutGroup automorphism_group(const Graph& g, int enumeration_limit) {
  if (g.vertex_count() > enumeration_limit)
    throw SizeLimitError("automorphism enumeration refused: order " + std::to_string(g.vertex_count()) +
                         " exceeds limit " + std::to_string(enumeration_limit));
  AutSearch search(g);
  search.run();
  AutGroup grp;
  grp.elements.reserve(search.out.size());
  for (auto& image : search.out) grp.elements.emplace_back(std::move(image));
  return grp;
}

bool is_small(const Graph& g, const Permutation& p) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (p(v) != v && g.adjacent(v, p(v))) return true;
  return false;
}

std::vector<Permutation> small_automorphisms(const Graph& g, const AutGroup& grp) {
  std::vector<Permutation> out;
  for (const Permutation& p : grp.elements)
    if (is_small(g, p)) out.push_back(p);
  return out;
}

OrbitPartition vertex_orbits(const AutGroup& grp, int n) {
  std::vector<int> root(static_cast<size_t>(n));
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int v) {
    while (root[static_cast<size_t>(v)] != v) {
      root[static_cast<size_t>(v)] = root[static_cast<size_t>(root[static_cast<size_t>(v)])];
      v = root[static_cast<size_t>(v)];
    }
    return v;
  };
  for (const Permutation& p : grp.elements) {
    for (int v = 0; v < n; ++v) {
      const int a = find(v), b = find(p(v));
      if (a != b) root[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  OrbitPartition part;
  part.class_of.assign(static_cast<size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    const int r = find(v);
    if (part.class_of[static_cast<size_t>(r)] < 0) {
      part.class_of[static_cast<size_t>(r)] = static_cast<int>(part.classes.size());
      part.classes.push_back(VertexSet());
    }
    const int idx = part.class_of[static_cast<size_t>(r)];
    part.class_of[static_cast<size_t>(v)] = idx;
    part.classes[static_cast<size_t>(idx)].add(v);
  }
  return part;
}

AutGroup setwise_stabilizer(const AutGroup& grp, VertexSet s) {
  AutGroup out;
  for (const Permutation& p : grp.elements)
    if (p.map_set(s) == s) out.elements.push_back(p);
  return out;
}

}  // namespace symbreak
