#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace symbreak {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph6 / edge-list input. The code identifies which rule the
/// input broke; the message carries the offending detail.
class ParseError : public Error {
public:
  enum class Code {
    BadLength,
    CharOutOfRange,
    TrailingGarbage,
    UnsupportedOrder,
    BadToken,
    IndexOutOfRange,
    SelfLoop,
  };

  ParseError(Code code, const std::string& what) : Error(what), code_(code) {}
  Code code() const { return code_; }

private:
  Code code_;
};

/// Operation asked to run on a graph beyond its enumeration/search limit.
class SizeLimitError : public Error {
public:
  using Error::Error;
};

/// Canonically oriented edge: u < v always.
struct Edge {
  int u;
  int v;

  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {
    if (a == b) throw ParseError(ParseError::Code::SelfLoop, "self-loop edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
  }

  auto operator<=>(const Edge&) const = default;
};

/// Subset of the vertex ids {0,..,n-1}, packed into one word (n <= 64).
class VertexSet {
public:
  VertexSet() = default;
  explicit VertexSet(std::uint64_t bits) : bits_(bits) {}

  static VertexSet full(int n) {
    return VertexSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static VertexSet single(int v) { return VertexSet(std::uint64_t{1} << v); }

  std::uint64_t bits() const { return bits_; }
  bool contains(int v) const { return (bits_ >> v) & 1u; }
  void add(int v) { bits_ |= std::uint64_t{1} << v; }
  void remove(int v) { bits_ &= ~(std::uint64_t{1} << v); }
  bool empty() const { return bits_ == 0; }
  int size() const { return __builtin_popcountll(bits_); }
  bool subset_of(VertexSet other) const { return (bits_ & ~other.bits_) == 0; }

  /// Least member; set must be non-empty.
  int min_vertex() const {
    if (bits_ == 0) throw Error("min_vertex on empty vertex set");
    return __builtin_ctzll(bits_);
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(__builtin_ctzll(b));
    return out;
  }

  friend VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits_ | b.bits_); }
  friend VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & b.bits_); }
  auto operator<=>(const VertexSet&) const = default;

private:
  std::uint64_t bits_ = 0;
};

/// Finite simple undirected graph on vertex ids 0..n-1 with bit-packed
/// adjacency rows. Immutable after construction; cheap to copy and safe to
/// share across threads.
class Graph {
public:
  static constexpr int kMaxVertices = 64;

  Graph() = default;

  explicit Graph(int n) : n_(check_order(n)), rows_(static_cast<size_t>(n), 0) {}

  Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
    for (const Edge& e : edges) {
      if (e.v >= n_)
        throw ParseError(ParseError::Code::IndexOutOfRange,
                         "edge endpoint " + std::to_string(e.v) + " out of range for order " + std::to_string(n_));
      rows_[static_cast<size_t>(e.u)] |= std::uint64_t{1} << e.v;
      rows_[static_cast<size_t>(e.v)] |= std::uint64_t{1} << e.u;
    }
  }

  int vertex_count() const { return n_; }

  bool adjacent(int u, int v) const { return (rows_[static_cast<size_t>(u)] >> v) & 1u; }

  std::uint64_t neighbours(int v) const { return rows_[static_cast<size_t>(v)]; }

  int degree(int v) const { return __builtin_popcountll(rows_[static_cast<size_t>(v)]); }

  int edge_count() const {
    int total = 0;
    for (std::uint64_t row : rows_) total += __builtin_popcountll(row);
    return total / 2;
  }

  /// All edges in canonical (u,v)-ascending order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<size_t>(edge_count()));
    for (int u = 0; u < n_; ++u)
      for (std::uint64_t b = rows_[static_cast<size_t>(u)] >> (u + 1); b; b &= b - 1)
        out.emplace_back(u, u + 1 + __builtin_ctzll(b));
    return out;
  }

  bool operator==(const Graph&) const = default;

private:
  static int check_order(int n) {
    if (n < 0 || n > kMaxVertices)
      throw ParseError(ParseError::Code::UnsupportedOrder, "graph order " + std::to_string(n) + " outside supported range 0..64");
    return n;
  }

  int n_ = 0;
  std::vector<std::uint64_t> rows_;
};

/// Decodes one graph6 line (short form, n <= 62). A leading ">>graph6<<"
/// header is stripped. Surrounding whitespace/newline is tolerated.
Graph parse_graph6(const std::string& text);

/// Encodes in graph6 short form; rejects n > 62.
std::string to_graph6(const Graph& g);

/// Plain edge-list format: first line the order n, then one "u v" pair per
/// line. Duplicate pairs collapse; self-loops and out-of-range ids reject.
Graph parse_edge_list(const std::string& text);

/// Maximal connected vertex sets, ordered by least member.
std::vector<VertexSet> connected_components(const Graph& g);

/// Subgraph induced by s plus the order-preserving map new-id -> old-id.
struct InducedSubgraph {
  Graph graph;
  std::vector<int> to_parent;
};
InducedSubgraph induced_subgraph(const Graph& g, VertexSet s);

inline constexpr int kUnreachable = -1;

/// Multi-source BFS distance per vertex; kUnreachable flags vertices with no
/// path into `sources`.
std::vector<int> bfs_distance(const Graph& g, VertexSet sources);

struct DegreeProfile {
  std::vector<int> sorted_degrees;
  bool is_regular;
};
DegreeProfile degree_profile(const Graph& g);

}  // namespace symbreak
