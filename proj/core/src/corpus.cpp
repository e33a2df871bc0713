#include "symbreak/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace symbreak {

Claim parse_claim(const std::string& name) {
  if (name == "thm1") return Claim::Thm1;
  if (name == "kpw3") return Claim::Kpw3;
  if (name == "regular2") return Claim::Regular2;
  if (name == "monotone") return Claim::Monotone;
  throw Error("unknown claim: " + name + " (expected thm1, kpw3, regular2 or monotone)");
}

std::string to_string(Claim claim) {
  switch (claim) {
    case Claim::Thm1: return "thm1";
    case Claim::Kpw3: return "kpw3";
    case Claim::Regular2: return "regular2";
    case Claim::Monotone: return "monotone";
  }
  return "?";
}

std::vector<std::string> read_graph6_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read corpus file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

namespace {

bool passes_filters(const Graph& g, const CorpusFilters& f) {
  const int n = g.vertex_count();
  if (n < f.min_order || n > f.max_order) return false;
  if (f.connected_only && connected_components(g).size() > 1) return false;
  if (f.regular_only && !degree_profile(g).is_regular) return false;
  return true;
}

bool has_isolated_edge(const Graph& g) {
  for (const VertexSet& comp : connected_components(g))
    if (comp.size() == 2) return true;
  return false;
}

bool finite_at_most(const IndexValue& v, int bound) {
  return v.kind == IndexKind::Finite && v.value <= bound;
}

}  // namespace

std::vector<VerificationRecord> analyze_corpus(const std::vector<std::string>& graph6_lines, const CorpusOptions& opt) {
  std::vector<Graph> graphs;
  graphs.reserve(graph6_lines.size());
  for (const std::string& line : graph6_lines) graphs.push_back(parse_graph6(line));

  RecordCache cache(opt.cache_file);
  std::vector<VerificationRecord> records(graphs.size());
  std::vector<char> fresh(graphs.size(), 0);
  std::vector<std::exception_ptr> errors(graphs.size());

  const int jobs = std::max(1, opt.jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= graphs.size()) return;
      try {
        if (auto hit = cache.lookup(to_graph6(graphs[i]))) {
          records[i] = std::move(*hit);
        } else {
          records[i] = analyze_graph(graphs[i], opt.analyze);
          fresh[i] = 1;
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);

  // Single-writer append, in input order.
  if (cache.enabled())
    for (std::size_t i = 0; i < records.size(); ++i)
      if (fresh[i]) cache.store(records[i]);
  return records;
}

namespace {

CorpusSummary run_corpus(const std::vector<std::string>& graph6_lines, const Claim* claim, const CorpusOptions& opt) {
  CorpusSummary s;
  s.claim = claim ? to_string(*claim) : "stats";

  std::vector<std::string> kept_lines;
  std::vector<Graph> kept_graphs;
  for (const std::string& line : graph6_lines) {
    const Graph g = parse_graph6(line);
    ++s.parsed;
    if (!passes_filters(g, opt.filters)) {
      ++s.skipped;
      continue;
    }
    kept_lines.push_back(line);
    kept_graphs.push_back(g);
  }

  const std::vector<VerificationRecord> records = analyze_corpus(kept_lines, opt);

  for (std::size_t i = 0; i < records.size(); ++i) {
    const VerificationRecord& r = records[i];
    const Graph& g = kept_graphs[i];
    if (!r.invariants_hold()) ++s.invariant_violations;

    bool in_population = true;
    bool ok = true;
    if (claim == nullptr) {
      ok = true;
    } else {
      switch (*claim) {
        case Claim::Thm1:
          in_population = r.connected && r.n >= 6;
          ok = finite_at_most(r.d_small, 2);
          if (!r.connected && r.n >= 6) {
            // The theorem's statement omits connectivity; report that
            // population separately instead of asserting either reading.
            ++s.disconnected_total;
            if (!ok) {
              ++s.disconnected_fail;
              s.disconnected_violators.push_back(r.graph6);
            }
          }
          break;
        case Claim::Kpw3:
          in_population = !has_isolated_edge(g);
          ok = finite_at_most(r.d_small, 3);
          if (in_population && r.d_small.kind == IndexKind::Finite && r.d_small.value == 3)
            s.attainers.push_back(r.graph6);
          break;
        case Claim::Regular2:
          in_population = r.connected && r.regular && r.n >= 7;
          ok = finite_at_most(r.d_prime, 2);
          break;
        case Claim::Monotone:
          in_population = true;
          ok = !r.d_small.provably_greater(r.d_prime);
          break;
      }
    }
    if (!in_population) {
      ++s.skipped;
      continue;
    }
    ++s.total;
    ++s.d_prime_distribution[r.d_prime.token()];
    ++s.d_small_distribution[r.d_small.token()];
    ++s.case_histogram[r.method];
    if (ok) {
      ++s.pass;
    } else {
      ++s.fail;
      s.violators.push_back(r.graph6);
    }
  }
  return s;
}

}  // namespace

CorpusSummary verify_corpus(const std::vector<std::string>& graph6_lines, Claim claim, const CorpusOptions& opt) {
  return run_corpus(graph6_lines, &claim, opt);
}

CorpusSummary corpus_stats(const std::vector<std::string>& graph6_lines, const CorpusOptions& opt) {
  return run_corpus(graph6_lines, nullptr, opt);
}

std::string summary_to_json(const CorpusSummary& s) {
  nlohmann::json j{{"claim", s.claim},
                   {"parsed", s.parsed},
                   {"skipped", s.skipped},
                   {"total", s.total},
                   {"pass", s.pass},
                   {"fail", s.fail},
                   {"violators", s.violators},
                   {"attainers", s.attainers},
                   {"invariant_violations", s.invariant_violations},
                   {"d_prime_distribution", s.d_prime_distribution},
                   {"d_small_distribution", s.d_small_distribution},
                   {"case_histogram", s.case_histogram},
                   {"notes", s.notes}};
  if (s.claim == "thm1") {
    j["disconnected_total"] = s.disconnected_total;
    j["disconnected_fail"] = s.disconnected_fail;
    j["disconnected_violators"] = s.disconnected_violators;
  }
  return j.dump(2);
}

namespace {

std::string format_distribution(const std::map<std::string, std::size_t>& table) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, count] : table) {
    if (!first) out << "  ";
    out << key << '=' << count;
    first = false;
  }
  if (first) out << "(empty)";
  return out.str();
}

}  // namespace

std::string summary_to_text(const CorpusSummary& s) {
  std::ostringstream out;
  out << "claim:                " << s.claim << '\n'
      << "parsed:               " << s.parsed << '\n'
      << "skipped:              " << s.skipped << '\n'
      << "evaluated:            " << s.total << '\n'
      << "pass:                 " << s.pass << '\n'
      << "fail:                 " << s.fail << '\n'
      << "invariant violations: " << s.invariant_violations << '\n'
      << "d_prime distribution: " << format_distribution(s.d_prime_distribution) << '\n'
      << "d_small distribution: " << format_distribution(s.d_small_distribution) << '\n'
      << "method histogram:     " << format_distribution(s.case_histogram) << '\n';
  if (s.claim == "thm1")
    out << "disconnected n>=6:    evaluated=" << s.disconnected_total << " fail=" << s.disconnected_fail << '\n';
  if (!s.attainers.empty()) {
    out << "attainers (d_small=3):\n";
    for (const std::string& a : s.attainers) out << "  " << a << '\n';
  }
  if (s.violators.empty()) {
    out << "violators: (none)\n";
  } else {
    out << "violators:\n";
    for (const std::string& v : s.violators) out << "  " << v << '\n';
  }
  for (const std::string& n : s.notes) out << "note: " << n << '\n';
  return out.str();
}

std::string summary_to_csv(const CorpusSummary& s) {
  std::ostringstream out;
  out << "table,key,count\n";
  out << "summary,parsed," << s.parsed << '\n';
  out << "summary,skipped," << s.skipped << '\n';
  out << "summary,total," << s.total << '\n';
  out << "summary,pass," << s.pass << '\n';
  out << "summary,fail," << s.fail << '\n';
  out << "summary,invariant_violations," << s.invariant_violations << '\n';
  for (const auto& [key, count] : s.d_prime_distribution) out << "d_prime," << key << ',' << count << '\n';
  for (const auto& [key, count] : s.d_small_distribution) out << "d_small," << key << ',' << count << '\n';
  for (const auto& [key, count] : s.case_histogram) out << "method," << key << ',' << count << '\n';
  for (const std::string& v : s.violators) out << "violator," << v << ",1\n";
  for (const std::string& a : s.attainers) out << "attainer," << a << ",1\n";
  return out.str();
}

}  // namespace symbreak
