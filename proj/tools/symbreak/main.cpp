#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "symbreak/cache.hpp"
#include "symbreak/constructor.hpp"
#include "symbreak/corpus.hpp"
#include "symbreak/record.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFalsification = 3;

struct GraphInput {
  std::string file;
  std::string literal;  // graph6 given directly on the command line
  std::string format = "graph6";

  void attach(CLI::App* cmd) {
    cmd->add_option("graph6", literal, "graph6 string taken directly from the argument");
    cmd->add_option("--input", file, "input file (one graph)");
    cmd->add_option("--format", format, "input format: graph6 or edgelist")
        ->check(CLI::IsMember({"graph6", "edgelist"}));
  }

  symbreak::Graph load() const {
    if (!literal.empty()) return symbreak::parse_graph6(literal);
    if (file.empty()) throw symbreak::Error("no input: pass a graph6 string or --input FILE");
    std::ifstream in(file);
    if (!in) throw symbreak::Error("cannot read input file: " + file);
    std::stringstream buffer;
    buffer << in.rdbuf();
    if (format == "edgelist") return symbreak::parse_edge_list(buffer.str());
    std::string text = buffer.str();
    const auto eol = text.find('\n');
    return symbreak::parse_graph6(eol == std::string::npos ? text : text.substr(0, eol));
  }
};

std::string cache_file_from(const std::string& cache_dir) {
  if (!cache_dir.empty()) return symbreak::RecordCache::file_in_dir(cache_dir);
  if (const char* env = std::getenv("SYMBREAK_CACHE")) return symbreak::RecordCache::file_in_dir(env);
  return {};
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw symbreak::Error("cannot write: " + path);
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbreak: automorphism groups, distinguishing indices and verified symmetry-breaking edge colourings of small graphs"};
  app.require_subcommand(1);

  // ---- analyze ----
  auto* analyze = app.add_subcommand("analyze", "full per-graph analysis as a JSON record");
  GraphInput analyze_in;
  analyze_in.attach(analyze);
  int analyze_max_colours = symbreak::kDefaultMaxColours;
  bool analyze_construct = false;
  std::string analyze_cache_dir;
  std::optional<std::uint64_t> analyze_seed;
  analyze->add_option("--max-colours", analyze_max_colours, "largest colour count tried (default 4)");
  analyze->add_flag("--construct", analyze_construct, "also run the constructive colouring and print its trace");
  analyze->add_option("--cache-dir", analyze_cache_dir, "result cache directory (or SYMBREAK_CACHE)");
  analyze->add_option("--seed-override", analyze_seed, "override the graph-derived heuristic seed");

  // ---- index ----
  auto* index = app.add_subcommand("index", "distinguishing and small distinguishing index of one graph");
  GraphInput index_in;
  index_in.attach(index);
  int index_max_colours = symbreak::kDefaultMaxColours;
  index->add_option("--max-colours", index_max_colours, "largest colour count tried (default 4)");

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "verify a claim over a graph6 corpus");
  std::string verify_input, verify_claim, verify_report = "text", verify_cache_dir;
  symbreak::CorpusOptions verify_opt;
  std::optional<std::uint64_t> verify_seed;
  verify->add_option("--input", verify_input, "graph6 corpus file")->required();
  verify->add_option("--claim", verify_claim, "claim: thm1, kpw3, regular2 or monotone")->required();
  verify->add_option("--min-order", verify_opt.filters.min_order, "keep graphs with n >= this");
  verify->add_option("--max-order", verify_opt.filters.max_order, "keep graphs with n <= this");
  verify->add_flag("--connected-only", verify_opt.filters.connected_only, "keep connected graphs only");
  verify->add_flag("--regular-only", verify_opt.filters.regular_only, "keep regular graphs only");
  verify->add_option("--max-colours", verify_opt.analyze.max_colours, "largest colour count tried (default 4)");
  verify->add_option("--jobs", verify_opt.jobs, "worker threads (default 1)");
  verify->add_option("--cache-dir", verify_cache_dir, "result cache directory (or SYMBREAK_CACHE)");
  verify->add_option("--report", verify_report, "report format: json, text or csv")
      ->check(CLI::IsMember({"json", "text", "csv"}));
  verify->add_option("--seed-override", verify_seed, "override the graph-derived heuristic seed");

  // ---- construct ----
  auto* construct = app.add_subcommand("construct", "emit a verified 2-colouring breaking all small automorphisms");
  GraphInput construct_in;
  construct_in.attach(construct);
  std::string colouring_out = "-", trace_out;
  std::optional<std::uint64_t> construct_seed;
  construct->add_option("--colouring-out", colouring_out, "colouring text output path (default stdout)");
  construct->add_option("--trace-out", trace_out, "construction trace JSON output path");
  construct->add_option("--seed-override", construct_seed, "override the graph-derived heuristic seed");

  // ---- stats ----
  auto* stats = app.add_subcommand("stats", "index distributions and method histogram over a corpus");
  std::string stats_input, stats_report = "text", stats_cache_dir;
  symbreak::CorpusOptions stats_opt;
  stats->add_option("--input", stats_input, "graph6 corpus file")->required();
  stats->add_option("--min-order", stats_opt.filters.min_order, "keep graphs with n >= this");
  stats->add_option("--max-order", stats_opt.filters.max_order, "keep graphs with n <= this");
  stats->add_flag("--connected-only", stats_opt.filters.connected_only, "keep connected graphs only");
  stats->add_flag("--regular-only", stats_opt.filters.regular_only, "keep regular graphs only");
  stats->add_option("--max-colours", stats_opt.analyze.max_colours, "largest colour count tried (default 4)");
  stats->add_option("--jobs", stats_opt.jobs, "worker threads (default 1)");
  stats->add_option("--cache-dir", stats_cache_dir, "result cache directory (or SYMBREAK_CACHE)");
  stats->add_option("--report", stats_report, "report format: json, text or csv")
      ->check(CLI::IsMember({"json", "text", "csv"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) {
      const symbreak::Graph g = analyze_in.load();
      symbreak::AnalyzeOptions opt;
      opt.max_colours = analyze_max_colours;
      opt.run_construct = analyze_construct;
      opt.search.seed_override = analyze_seed;
      symbreak::RecordCache cache(cache_file_from(analyze_cache_dir));
      symbreak::ConstructionTrace trace;
      symbreak::VerificationRecord record;
      if (auto hit = cache.lookup(symbreak::to_graph6(g)); hit && !analyze_construct) {
        record = *hit;
      } else {
        record = symbreak::analyze_graph(g, opt, analyze_construct ? &trace : nullptr);
        if (cache.enabled()) cache.store(record);
      }
      std::cout << symbreak::record_to_json(record) << '\n';
      if (analyze_construct) std::cout << symbreak::trace_to_json(trace) << '\n';
      return kExitOk;
    }

    if (index->parsed()) {
      const symbreak::Graph g = index_in.load();
      const symbreak::IndexResult dp = symbreak::distinguishing_index(g, index_max_colours);
      const symbreak::IndexResult ds = symbreak::small_distinguishing_index(g, index_max_colours);
      std::cout << "{\"graph6\":\"" << symbreak::to_graph6(g) << "\",\"d_prime\":\""
                << symbreak::IndexValue::from(dp).token() << "\",\"d_small\":\""
                << symbreak::IndexValue::from(ds).token() << "\"}\n";
      return kExitOk;
    }

    if (verify->parsed()) {
      verify_opt.cache_file = cache_file_from(verify_cache_dir);
      verify_opt.analyze.search.seed_override = verify_seed;
      const auto lines = symbreak::read_graph6_lines(verify_input);
      const symbreak::CorpusSummary summary =
          symbreak::verify_corpus(lines, symbreak::parse_claim(verify_claim), verify_opt);
      if (verify_report == "json")
        std::cout << symbreak::summary_to_json(summary) << '\n';
      else if (verify_report == "csv")
        std::cout << symbreak::summary_to_csv(summary);
      else
        std::cout << symbreak::summary_to_text(summary);
      return summary.fail == 0 ? kExitOk : kExitViolations;
    }

    if (construct->parsed()) {
      const symbreak::Graph g = construct_in.load();
      symbreak::ConstructionOptions opt;
      opt.search.seed_override = construct_seed;
      const auto [colouring, trace] = symbreak::construct(g, opt);
      write_output(colouring_out, symbreak::to_colouring_text(colouring));
      if (!trace_out.empty()) write_output(trace_out, symbreak::trace_to_json(trace) + "\n");
      return trace.verified ? kExitOk : kExitViolations;
    }

    if (stats->parsed()) {
      stats_opt.cache_file = cache_file_from(stats_cache_dir);
      const auto lines = symbreak::read_graph6_lines(stats_input);
      const symbreak::CorpusSummary summary = symbreak::corpus_stats(lines, stats_opt);
      if (stats_report == "json")
        std::cout << symbreak::summary_to_json(summary) << '\n';
      else if (stats_report == "csv")
        std::cout << symbreak::summary_to_csv(summary);
      else
        std::cout << symbreak::summary_to_text(summary);
      return kExitOk;
    }
  } catch (const symbreak::TheoremFalsification& e) {
    std::cerr << "FALSIFICATION: " << e.what() << '\n';
    return kExitFalsification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
