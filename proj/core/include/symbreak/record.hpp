#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "symbreak/constructor.hpp"
#include "symbreak/solver.hpp"

namespace symbreak {

std::string to_string(SearchMethod m);

/// Index value as reported: a finite number, INFINITE, or "exceeded max_k".
struct IndexValue {
  IndexKind kind = IndexKind::Finite;
  int value = 1;  // finite value, or the exhausted max_k for ExceedsMax

  static IndexValue from(const IndexResult& r) {
    return {r.kind, r.kind == IndexKind::Infinite ? 0 : r.value};
  }

  std::string token() const;                                  // "2", "INFINITE", ">4"
  static std::optional<IndexValue> parse(const std::string&);

  // Interval bounds for provable comparisons; ExceedsMax means (value, inf).
  int min_possible() const;
  int max_possible() const;

  /// True when this value is provably greater than other.
  bool provably_greater(const IndexValue& other) const { return min_possible() > other.max_possible(); }

  bool operator==(const IndexValue&) const = default;
};

/// Per-graph result row for corpus reports and the cache.
struct VerificationRecord {
  std::string graph6;
  int n = 0;
  int m = 0;
  std::uint64_t aut_order = 1;
  int small_count = 0;
  IndexValue d_prime;
  IndexValue d_small;
  std::string method;  // construction case when the constructor ran, else the solver method
  bool connected = false;
  bool regular = false;
  std::int64_t millis = 0;

  /// The row invariants: d_small <= d_prime when comparable, and d_small = 1
  /// exactly when there are no small automorphisms.
  bool invariants_hold() const;
};

std::string record_to_json(const VerificationRecord& r);
std::optional<VerificationRecord> record_from_json(const std::string& line);

std::string trace_to_json(const ConstructionTrace& t);

struct AnalyzeOptions {
  int max_colours = kDefaultMaxColours;
  bool run_construct = true;  // engage the constructor when connected and n >= 6
  SearchOptions search;
};

/// Full per-graph analysis: group, small automorphisms, both indices, and the
/// construction when applicable.
VerificationRecord analyze_graph(const Graph& g, const AnalyzeOptions& opt = {},
                                 ConstructionTrace* trace_out = nullptr);

}  // namespace symbreak
