#include "symbreak/colouring.hpp"

#include <algorithm>
#include <sstream>

namespace symbreak {

EdgeColouring EdgeColouring::uniform(const Graph& g, int value, int k) {
  EdgeColouring c;
  c.colours = std::max(k, value);
  c.edges = g.edges();
  c.colour.assign(c.edges.size(), value);
  return c;
}

int EdgeColouring::colour_of(int u, int v) const {
  const Edge key(std::min(u, v), std::max(u, v));
  const auto it = std::lower_bound(edges.begin(), edges.end(), key);
  if (it == edges.end() || !(*it == key))
    throw Error("colour_of: (" + std::to_string(key.u) + "," + std::to_string(key.v) + ") is not an edge of the colouring");
  return colour[static_cast<size_t>(it - edges.begin())];
}

bool EdgeColouring::total_on(const Graph& g) const {
  if (edges != g.edges() || colour.size() != edges.size()) return false;
  for (int c : colour)
    if (c < 1 || c > colours) return false;
  return true;
}

std::string to_colouring_text(const EdgeColouring& c) {
  std::ostringstream out;
  for (size_t i = 0; i < c.edges.size(); ++i)
    out << c.edges[i].u << ' ' << c.edges[i].v << ' ' << c.colour[i] << '\n';
  return out.str();
}

EdgeColouring parse_colouring_text(const std::string& text, const Graph& g) {
  EdgeColouring c;
  c.edges = g.edges();
  c.colour.assign(c.edges.size(), 0);
  std::istringstream in(text);
  std::string line;
  int max_colour = 1;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    int u, v, col;
    if (!(ls >> u)) continue;
    if (!(ls >> v >> col) || col < 1)
      throw ParseError(ParseError::Code::BadToken, "colouring line must be \"u v colour\": " + line);
    const Edge key(u, v);
    const auto it = std::lower_bound(c.edges.begin(), c.edges.end(), key);
    if (it == c.edges.end() || !(*it == key))
      throw ParseError(ParseError::Code::IndexOutOfRange, "coloured pair is not a graph edge: " + line);
    c.colour[static_cast<size_t>(it - c.edges.begin())] = col;
    max_colour = std::max(max_colour, col);
  }
  for (size_t i = 0; i < c.colour.size(); ++i)
    if (c.colour[i] == 0)
      throw ParseError(ParseError::Code::BadLength,
                       "edge (" + std::to_string(c.edges[i].u) + "," + std::to_string(c.edges[i].v) + ") left uncoloured");
  c.colours = max_colour;
  return c;
}

bool preserves(const Graph& g, const EdgeColouring& c, const Permutation& p) {
  if (p.degree() != g.vertex_count()) throw Error("permutation length does not match graph order");
  for (size_t i = 0; i < c.edges.size(); ++i)
    if (c.colour_of(p(c.edges[i].u), p(c.edges[i].v)) != c.colour[i]) return false;
  return true;
}

bool breaks_all(const Graph& g, const EdgeColouring& c, const std::vector<Permutation>& targets) {
  for (const Permutation& p : targets)
    if (preserves(g, c, p)) return false;
  return true;
}

std::vector<std::pair<int, int>> common_swapped_pairs(const std::vector<Permutation>& preservers) {
  std::vector<std::pair<int, int>> pairs;
  if (preservers.empty()) return pairs;
  const Permutation& first = preservers.front();
  for (int a = 0; a < first.degree(); ++a) {
    const int b = first(a);
    if (b > a && first(b) == a) pairs.emplace_back(a, b);
  }
  for (const Permutation& p : preservers) {
    std::erase_if(pairs, [&](const std::pair<int, int>& xy) {
      return p(xy.first) != xy.second || p(xy.second) != xy.first;
    });
    if (pairs.empty()) break;
  }
  return pairs;
}

AlmostWitness find_almost_distinguishing_witness(const Graph& g, const EdgeColouring& c, const AutGroup& grp) {
  std::vector<Permutation> preservers;
  for (const Permutation& p : grp.elements)
    if (!p.is_identity() && preserves(g, c, p)) preservers.push_back(p);
  if (preservers.empty()) return {AlmostWitness::Status::Distinguishing, std::nullopt};
  const auto pairs = common_swapped_pairs(preservers);
  if (pairs.empty()) return {AlmostWitness::Status::NotAlmostDistinguishing, std::nullopt};
  return {AlmostWitness::Status::Witness, pairs.front()};
}

namespace {

// Backtracking bijection search shared by the iso tests. colour tables are
// null for the uncoloured variant.
struct IsoSearch {
  const Graph& g1;
  const Graph& g2;
  const EdgeColouring* c1;
  const EdgeColouring* c2;
  int n;
  std::vector<int> img;
  std::uint64_t used = 0;

  bool descend(int v) {
    if (v == n) return true;
    for (int w = 0; w < n; ++w) {
      if ((used >> w) & 1u) continue;
      if (g1.degree(v) != g2.degree(w)) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) {
        const bool a1 = g1.adjacent(v, u);
        if (a1 != g2.adjacent(w, img[static_cast<size_t>(u)])) {
          ok = false;
        } else if (a1 && c1 != nullptr &&
                   c1->colour_of(v, u) != c2->colour_of(w, img[static_cast<size_t>(u)])) {
          ok = false;
        }
      }
      if (!ok) continue;
      img[static_cast<size_t>(v)] = w;
      used |= std::uint64_t{1} << w;
      if (descend(v + 1)) return true;
      used &= ~(std::uint64_t{1} << w);
    }
    return false;
  }
};

std::optional<Permutation> run_iso(const Graph& g1, const Graph& g2, const EdgeColouring* c1, const EdgeColouring* c2) {
  if (g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count()) return std::nullopt;
  if (g1.vertex_count() > kColouredIsoLimit)
    throw SizeLimitError("isomorphism search limited to order " + std::to_string(kColouredIsoLimit));
  IsoSearch search{g1, g2, c1, c2, g1.vertex_count(), std::vector<int>(static_cast<size_t>(g1.vertex_count()), -1)};
  if (!search.descend(0)) return std::nullopt;
  return Permutation(search.img);
}

}  // namespace

bool coloured_isomorphic(const Graph& g1, const EdgeColouring& c1, const Graph& g2, const EdgeColouring& c2) {
  return run_iso(g1, g2, &c1, &c2).has_value();
}

std::optional<Permutation> find_isomorphism(const Graph& g1, const Graph& g2) {
  return run_iso(g1, g2, nullptr, nullptr);
}

EdgeColouring rename_colours(const EdgeColouring& c, const std::vector<int>& rename) {
  EdgeColouring out = c;
  for (size_t i = 0; i < out.colour.size(); ++i) out.colour[i] = rename[static_cast<size_t>(c.colour[i] - 1)];
  return out;
}

}  // namespace symbreak
