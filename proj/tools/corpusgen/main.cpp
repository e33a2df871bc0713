// Generates the complete graph6 corpus of one order: every simple graph up
// to isomorphism, emitted under a canonical labelling so runs are
// byte-stable. Works by vertex augmentation from order 1, deduplicating
// children via a min-lex canonical form; generated counts are self-checked
// against the known enumeration up to order 8.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <unordered_set>
#include <vector>

#include "CLI11.hpp"
#include "symbreak/automorphism.hpp"
#include "symbreak/graph.hpp"

namespace {

using symbreak::Graph;
using symbreak::Permutation;

constexpr int kMaxOrder = 11;  // upper-triangle bits must fit one word

// Upper-triangle bits in column order, first pair most significant.
std::uint64_t upper_bits(const Graph& g) {
  const int total = g.vertex_count() * (g.vertex_count() - 1) / 2;
  std::uint64_t bits = 0;
  int idx = 0;
  for (int v = 1; v < g.vertex_count(); ++v)
    for (int u = 0; u < v; ++u, ++idx)
      if (g.adjacent(u, v)) bits |= std::uint64_t{1} << (total - 1 - idx);
  return bits;
}

Graph from_bits(int n, std::uint64_t bits) {
  const int total = n * (n - 1) / 2;
  std::vector<symbreak::Edge> edges;
  int idx = 0;
  for (int v = 1; v < n; ++v)
    for (int u = 0; u < v; ++u, ++idx)
      if ((bits >> (total - 1 - idx)) & 1u) edges.emplace_back(u, v);
  return Graph(n, edges);
}

struct CanonSearch {
  const Graph& g;
  int n;
  int total;
  std::vector<std::uint64_t> prefix_mask;  // bits decided once positions 0..p are placed
  std::vector<int> perm;                   // position -> original vertex
  std::uint64_t used = 0;
  std::uint64_t best;

  explicit CanonSearch(const Graph& graph)
      : g(graph), n(graph.vertex_count()), total(n * (n - 1) / 2), perm(static_cast<size_t>(n), -1),
        best(upper_bits(graph)) {
    prefix_mask.resize(static_cast<size_t>(n));
    for (int p = 0; p < n; ++p) {
      const int decided = (p + 1) * p / 2;  // bits fixed once column p is in place
      prefix_mask[static_cast<size_t>(p)] =
          decided == 0 ? 0 : ((decided >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << decided) - 1)) << (total - decided));
    }
  }

  void descend(int p, std::uint64_t current) {
    if (p == n) {
      best = std::min(best, current);
      return;
    }
    const int col_base = p * (p - 1) / 2;
    for (int w = 0; w < n; ++w) {
      if ((used >> w) & 1u) continue;
      std::uint64_t next = current;
      for (int i = 0; i < p; ++i)
        if (g.adjacent(perm[static_cast<size_t>(i)], w)) next |= std::uint64_t{1} << (total - 1 - (col_base + i));
      if ((next & prefix_mask[static_cast<size_t>(p)]) > (best & prefix_mask[static_cast<size_t>(p)])) continue;
      perm[static_cast<size_t>(p)] = w;
      used |= std::uint64_t{1} << w;
      descend(p + 1, next);
      used &= ~(std::uint64_t{1} << w);
    }
  }
};

std::uint64_t canonical_bits(const Graph& g) {
  if (g.vertex_count() <= 1) return 0;
  CanonSearch search(g);
  search.descend(0, 0);
  return search.best;
}

std::uint64_t mask_image(std::uint64_t mask, const Permutation& p) {
  std::uint64_t out = 0;
  for (std::uint64_t b = mask; b; b &= b - 1) out |= std::uint64_t{1} << p(__builtin_ctzll(b));
  return out;
}

/// All graphs of order n up to isomorphism, canonically labelled: extend
/// every (n-1)-graph by one vertex over orbit-representative neighbourhoods,
/// then deduplicate canonical forms.
std::vector<Graph> next_level(const std::vector<Graph>& parents, int n) {
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::uint64_t> forms;
  for (const Graph& parent : parents) {
    const symbreak::AutGroup aut = symbreak::automorphism_group(parent);
    const std::uint64_t subsets = std::uint64_t{1} << (n - 1);
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
      bool least = true;
      for (const Permutation& p : aut.elements) {
        if (mask_image(mask, p) < mask) {
          least = false;
          break;
        }
      }
      if (!least) continue;
      std::vector<symbreak::Edge> edges = parent.edges();
      for (std::uint64_t b = mask; b; b &= b - 1) edges.emplace_back(__builtin_ctzll(b), n - 1);
      const std::uint64_t form = canonical_bits(Graph(n, edges));
      if (seen.insert(form).second) forms.push_back(form);
    }
  }
  std::sort(forms.begin(), forms.end());
  std::vector<Graph> out;
  out.reserve(forms.size());
  for (std::uint64_t form : forms) out.push_back(from_bits(n, form));
  return out;
}

// Unlabelled simple graph counts per order, total and connected.
constexpr std::uint64_t kKnownTotal[] = {0, 1, 2, 4, 11, 34, 156, 1044, 12346, 274668};
constexpr std::uint64_t kKnownConnected[] = {0, 1, 1, 2, 6, 21, 112, 853, 11117, 261080};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corpusgen: exhaustive graph6 corpora of one order, up to isomorphism"};
  int order = 0;
  bool connected_only = false;
  std::string out_path;
  app.add_option("--order", order, "graph order to generate")->required()->check(CLI::Range(1, kMaxOrder));
  app.add_flag("--connected-only", connected_only, "emit connected graphs only");
  app.add_option("--out", out_path, "output file (default stdout)");
  CLI11_PARSE(app, argc, argv);

  std::vector<Graph> level = {Graph(1)};
  for (int n = 2; n <= order; ++n) level = next_level(level, n);

  std::vector<std::string> lines;
  std::uint64_t connected_count = 0;
  for (const Graph& g : level) {
    const bool connected = symbreak::connected_components(g).size() <= 1;
    connected_count += connected ? 1 : 0;
    if (connected_only && !connected) continue;
    lines.push_back(symbreak::to_graph6(g));
  }
  std::sort(lines.begin(), lines.end());

  if (order <= 9) {
    if (level.size() != kKnownTotal[order] || connected_count != kKnownConnected[order]) {
      std::cerr << "corpusgen self-check failed for order " << order << ": got " << level.size() << " graphs ("
                << connected_count << " connected), expected " << kKnownTotal[order] << " (" << kKnownConnected[order]
                << " connected)\n";
      return 1;
    }
  }

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "cannot write " << out_path << "\n";
      return 1;
    }
    out = &file;
  }
  for (const std::string& line : lines) *out << line << '\n';
  std::cerr << "order " << order << ": " << lines.size() << " graphs written ("
            << (connected_only ? "connected only" : "all") << ")\n";
  return 0;
}
