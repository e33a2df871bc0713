#include "symbreak/graph.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace symbreak {

namespace {

constexpr int kG6Lo = 63;   // '?'
constexpr int kG6Hi = 126;  // '~'

std::string strip_graph6_line(const std::string& text) {
  std::string s = text;
  const std::string header = ">>graph6<<";
  if (s.rfind(header, 0) == 0) s.erase(0, header.size());
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
    s.pop_back();
  size_t start = 0;
  while (start < s.size() && (s[start] == ' ' || s[start] == '\t')) ++start;
  return s.substr(start);
}

}  // namespace

Graph parse_graph6(const std::string& text) {
  const std::string s = strip_graph6_line(text);
  if (s.empty()) throw ParseError(ParseError::Code::BadLength, "empty graph6 line");

  for (size_t i = 0; i < s.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    if (c < kG6Lo || c > kG6Hi)
      throw ParseError(ParseError::Code::CharOutOfRange,
                       "graph6 character out of range 63..126 at position " + std::to_string(i));
  }
  if (s[0] == '~')
    throw ParseError(ParseError::Code::UnsupportedOrder, "graph6 long form (n > 62) not supported");

  const int n = s[0] - kG6Lo;
  const int bit_count = n * (n - 1) / 2;
  const size_t expected = 1 + static_cast<size_t>((bit_count + 5) / 6);
  if (s.size() < expected)
    throw ParseError(ParseError::Code::BadLength,
                     "graph6 line too short: need " + std::to_string(expected) + " characters for order " + std::to_string(n));
  if (s.size() > expected)
    throw ParseError(ParseError::Code::TrailingGarbage,
                     "trailing characters after graph6 payload for order " + std::to_string(n));

  std::vector<Edge> edges;
  int bit = 0;
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u, ++bit) {
      const int value = s[1 + static_cast<size_t>(bit / 6)] - kG6Lo;
      if ((value >> (5 - bit % 6)) & 1) edges.emplace_back(u, v);
    }
  }
  // Padding bits beyond the upper triangle must be zero.
  for (int pad = bit; pad < ((bit + 5) / 6) * 6; ++pad) {
    const int value = s[1 + static_cast<size_t>(pad / 6)] - kG6Lo;
    if ((value >> (5 - pad % 6)) & 1)
      throw ParseError(ParseError::Code::TrailingGarbage, "nonzero padding bits in graph6 payload");
  }
  return Graph(n, edges);
}

std::string to_graph6(const Graph& g) {
  const int n = g.vertex_count();
  if (n > 62) throw ParseError(ParseError::Code::UnsupportedOrder, "graph6 short form supports n <= 62");

  std::string out;
  out.push_back(static_cast<char>(n + kG6Lo));
  int acc = 0, filled = 0;
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u) {
      acc = (acc << 1) | (g.adjacent(u, v) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + kG6Lo));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + kG6Lo));
  return out;
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = -1;
  std::vector<Edge> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n) || n < 0)
        throw ParseError(ParseError::Code::BadToken, "edge list must start with the vertex count");
      if (n > Graph::kMaxVertices)
        throw ParseError(ParseError::Code::UnsupportedOrder, "edge list order " + std::to_string(n) + " exceeds 64");
      std::string rest;
      if (ls >> rest) throw ParseError(ParseError::Code::BadToken, "unexpected token after vertex count");
      continue;
    }
    int u, v;
    if (!(ls >> u)) continue;  // blank line
    if (!(ls >> v))
      throw ParseError(ParseError::Code::BadToken, "line " + std::to_string(line_no) + ": expected \"u v\"");
    std::string rest;
    if (ls >> rest) throw ParseError(ParseError::Code::BadToken, "line " + std::to_string(line_no) + ": trailing token");
    if (u == v) throw ParseError(ParseError::Code::SelfLoop, "line " + std::to_string(line_no) + ": self-loop");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ParseError(ParseError::Code::IndexOutOfRange, "line " + std::to_string(line_no) + ": vertex id out of range");
    edges.emplace_back(u, v);
  }
  if (n < 0) throw ParseError(ParseError::Code::BadLength, "empty edge list input");
  return Graph(n, edges);  // duplicates collapse in the bit rows
}

std::vector<VertexSet> connected_components(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<VertexSet> out;
  std::uint64_t seen = 0;
  for (int start = 0; start < n; ++start) {
    if ((seen >> start) & 1u) continue;
    std::uint64_t comp = std::uint64_t{1} << start;
    std::uint64_t frontier = comp;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t b = frontier; b; b &= b - 1) next |= g.neighbours(__builtin_ctzll(b));
      frontier = next & ~comp;
      comp |= next;
    }
    seen |= comp;
    out.push_back(VertexSet(comp));
  }
  return out;
}

InducedSubgraph induced_subgraph(const Graph& g, VertexSet s) {
  if (!s.subset_of(VertexSet::full(g.vertex_count())))
    throw Error("induced_subgraph: member out of range");
  const std::vector<int> to_parent = s.to_vector();
  std::vector<Edge> edges;
  for (size_t i = 0; i < to_parent.size(); ++i)
    for (size_t j = i + 1; j < to_parent.size(); ++j)
      if (g.adjacent(to_parent[i], to_parent[j])) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return InducedSubgraph{Graph(static_cast<int>(to_parent.size()), edges), to_parent};
}

std::vector<int> bfs_distance(const Graph& g, VertexSet sources) {
  const int n = g.vertex_count();
  std::vector<int> dist(static_cast<size_t>(n), kUnreachable);
  std::uint64_t reached = sources.bits();
  std::uint64_t frontier = reached;
  int d = 0;
  while (frontier) {
    for (std::uint64_t b = frontier; b; b &= b - 1) dist[static_cast<size_t>(__builtin_ctzll(b))] = d;
    std::uint64_t next = 0;
    for (std::uint64_t b = frontier; b; b &= b - 1) next |= g.neighbours(__builtin_ctzll(b));
    frontier = next & ~reached;
    reached |= next;
    ++d;
  }
  return dist;
}

DegreeProfile degree_profile(const Graph& g) {
  DegreeProfile p;
  p.sorted_degrees.reserve(static_cast<size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v) p.sorted_degrees.push_back(g.degree(v));
  std::sort(p.sorted_degrees.begin(), p.sorted_degrees.end());
  p.is_regular = p.sorted_degrees.empty() || p.sorted_degrees.front() == p.sorted_degrees.back();
  return p;
}

}  // namespace symbreak
