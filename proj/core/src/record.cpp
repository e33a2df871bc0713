#include "symbreak/record.hpp"

#include <chrono>
#include <limits>

#include "json.hpp"

namespace symbreak {

std::string to_string(SearchMethod m) {
  switch (m) {
    case SearchMethod::NoSymmetryShortcut: return "no-symmetry-shortcut";
    case SearchMethod::HeuristicSearch: return "heuristic-search";
    case SearchMethod::Exhaustive: return "exhaustive";
  }
  return "?";
}

std::string IndexValue::token() const {
  switch (kind) {
    case IndexKind::Finite: return std::to_string(value);
    case IndexKind::Infinite: return "INFINITE";
    case IndexKind::ExceedsMax: return ">" + std::to_string(value);
  }
  return "?";
}

std::optional<IndexValue> IndexValue::parse(const std::string& s) {
  if (s == "INFINITE") return IndexValue{IndexKind::Infinite, 0};
  try {
    if (!s.empty() && s.front() == '>') return IndexValue{IndexKind::ExceedsMax, std::stoi(s.substr(1))};
    return IndexValue{IndexKind::Finite, std::stoi(s)};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

int IndexValue::min_possible() const {
  switch (kind) {
    case IndexKind::Finite: return value;
    case IndexKind::ExceedsMax: return value + 1;
    case IndexKind::Infinite: return std::numeric_limits<int>::max();
  }
  return value;
}

int IndexValue::max_possible() const {
  return kind == IndexKind::Finite ? value : std::numeric_limits<int>::max();
}

bool VerificationRecord::invariants_hold() const {
  if (d_small.provably_greater(d_prime)) return false;
  const bool small_one = d_small.kind == IndexKind::Finite && d_small.value == 1;
  return small_one == (small_count == 0);
}

std::string record_to_json(const VerificationRecord& r) {
  nlohmann::json j{{"graph6", r.graph6},
                   {"n", r.n},
                   {"m", r.m},
                   {"aut_order", r.aut_order},
                   {"small_count", r.small_count},
                   {"d_prime", r.d_prime.token()},
                   {"d_small", r.d_small.token()},
                   {"method", r.method},
                   {"connected", r.connected},
                   {"regular", r.regular},
                   {"millis", r.millis}};
  return j.dump();
}

std::optional<VerificationRecord> record_from_json(const std::string& line) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  try {
    VerificationRecord r;
    r.graph6 = j.at("graph6").get<std::string>();
    r.n = j.at("n").get<int>();
    r.m = j.at("m").get<int>();
    r.aut_order = j.at("aut_order").get<std::uint64_t>();
    r.small_count = j.at("small_count").get<int>();
    const auto dp = IndexValue::parse(j.at("d_prime").get<std::string>());
    const auto ds = IndexValue::parse(j.at("d_small").get<std::string>());
    if (!dp || !ds) return std::nullopt;
    r.d_prime = *dp;
    r.d_small = *ds;
    r.method = j.at("method").get<std::string>();
    r.connected = j.at("connected").get<bool>();
    r.regular = j.at("regular").get<bool>();
    r.millis = j.at("millis").get<std::int64_t>();
    return r;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

std::string trace_to_json(const ConstructionTrace& t) {
  nlohmann::json back = nlohmann::json::array();
  for (const BackEdgeChoice& b : t.back_edge_log)
    back.push_back({{"vertex", b.vertex}, {"pink_edge", {b.pink_edge.u, b.pink_edge.v}}});
  nlohmann::json j{{"chosen_x", t.chosen_x},
                   {"orbit_x", t.orbit_x.to_vector()},
                   {"component_c", t.component_c.to_vector()},
                   {"case", to_string(t.case_tag)},
                   {"back_edge_log", back},
                   {"verified", t.verified},
                   {"colour_iso_reading", t.colour_iso_reading},
                   {"notes", t.notes}};
  return j.dump(2);
}

VerificationRecord analyze_graph(const Graph& g, const AnalyzeOptions& opt, ConstructionTrace* trace_out) {
  const auto start = std::chrono::steady_clock::now();

  VerificationRecord r;
  r.graph6 = to_graph6(g);
  r.n = g.vertex_count();
  r.m = g.edge_count();
  r.connected = connected_components(g).size() <= 1;
  r.regular = degree_profile(g).is_regular;

  const AutGroup aut = automorphism_group(g);
  r.aut_order = aut.order();
  r.small_count = static_cast<int>(small_automorphisms(g, aut).size());

  const IndexResult dp = distinguishing_index(g, aut, opt.max_colours, opt.search);
  const IndexResult ds = small_distinguishing_index(g, aut, opt.max_colours, opt.search);
  r.d_prime = IndexValue::from(dp);
  r.d_small = IndexValue::from(ds);
  r.method = to_string(ds.method);

  if (opt.run_construct && r.connected && r.n >= 6) {
    ConstructionOptions copt;
    copt.search = opt.search;
    auto [colouring, trace] = construct(g, copt);
    (void)colouring;
    r.method = to_string(trace.case_tag);
    if (trace_out != nullptr) *trace_out = std::move(trace);
  }

  r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace symbreak
