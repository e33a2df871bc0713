#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "symbreak/cache.hpp"
#include "symbreak/record.hpp"

namespace symbreak {

enum class Claim { Thm1, Kpw3, Regular2, Monotone };

Claim parse_claim(const std::string& name);
std::string to_string(Claim claim);

struct CorpusFilters {
  int min_order = 0;
  int max_order = Graph::kMaxVertices;
  bool connected_only = false;
  bool regular_only = false;
};

struct CorpusOptions {
  CorpusFilters filters;
  int jobs = 1;
  AnalyzeOptions analyze;
  std::string cache_file;  // empty disables the cache
};

/// Per-claim corpus report. `total` counts graphs in the claim's population
/// after filters; pass + fail = total. Violators are listed verbatim in
/// input order. The disconnected sections exist for thm1 only, where the
/// connected and disconnected populations are reported separately.
struct CorpusSummary {
  std::string claim;
  std::size_t parsed = 0;
  std::size_t skipped = 0;
  std::size_t total = 0;
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::vector<std::string> violators;
  std::vector<std::string> attainers;  // kpw3: the graphs reaching d_small = 3
  std::size_t invariant_violations = 0;
  std::map<std::string, std::size_t> d_prime_distribution;
  std::map<std::string, std::size_t> d_small_distribution;
  std::map<std::string, std::size_t> case_histogram;
  std::size_t disconnected_total = 0;
  std::size_t disconnected_fail = 0;
  std::vector<std::string> disconnected_violators;
  std::vector<std::string> notes;
};

/// Analyzes every parsed graph across a worker pool (results merged in input
/// order) and evaluates the claim. Cached records are reused on exact graph6
/// key match; fresh records are appended by the calling thread.
CorpusSummary verify_corpus(const std::vector<std::string>& graph6_lines, Claim claim, const CorpusOptions& opt);

/// Claim-free corpus statistics (distributions and the case histogram).
CorpusSummary corpus_stats(const std::vector<std::string>& graph6_lines, const CorpusOptions& opt);

/// The records backing a corpus run, in input order (exposed for reporting).
std::vector<VerificationRecord> analyze_corpus(const std::vector<std::string>& graph6_lines, const CorpusOptions& opt);

std::string summary_to_json(const CorpusSummary& s);
std::string summary_to_text(const CorpusSummary& s);
std::string summary_to_csv(const CorpusSummary& s);

std::vector<std::string> read_graph6_lines(const std::string& path);

}  // namespace symbreak
