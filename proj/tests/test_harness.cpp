#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "symbreak/cache.hpp"
#include "symbreak/corpus.hpp"
#include "symbreak/record.hpp"

using namespace symbreak;

namespace {

struct CliResult {
  int exit_code;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SYMBREAK_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buffer[4096];
  while (size_t got = fread(buffer, 1, sizeof buffer, pipe)) output.append(buffer, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

std::string temp_dir() {
  char templ[] = "/tmp/symbreak_test_XXXXXX";
  REQUIRE(mkdtemp(templ) != nullptr);
  return templ;
}

}  // namespace

TEST_CASE("index value tokens") {
  CHECK(IndexValue{IndexKind::Finite, 2}.token() == "2");
  CHECK(IndexValue{IndexKind::Infinite, 0}.token() == "INFINITE");
  CHECK(IndexValue{IndexKind::ExceedsMax, 4}.token() == ">4");
  CHECK(*IndexValue::parse("2") == IndexValue{IndexKind::Finite, 2});
  CHECK(*IndexValue::parse("INFINITE") == IndexValue{IndexKind::Infinite, 0});
  CHECK(*IndexValue::parse(">4") == IndexValue{IndexKind::ExceedsMax, 4});
  CHECK_FALSE(IndexValue::parse("junk").has_value());

  CHECK(IndexValue{IndexKind::Finite, 3}.provably_greater(IndexValue{IndexKind::Finite, 2}));
  CHECK(IndexValue{IndexKind::Infinite, 0}.provably_greater(IndexValue{IndexKind::Finite, 4}));
  CHECK(IndexValue{IndexKind::ExceedsMax, 4}.provably_greater(IndexValue{IndexKind::Finite, 3}));
  CHECK_FALSE(IndexValue{IndexKind::ExceedsMax, 4}.provably_greater(IndexValue{IndexKind::Infinite, 0}));
  CHECK_FALSE(IndexValue{IndexKind::Finite, 2}.provably_greater(IndexValue{IndexKind::Finite, 2}));
}

TEST_CASE("analyze_graph on the worked examples") {
  SUBCASE("K2 is INFINITE for both indices") {
    const VerificationRecord r = analyze_graph(parse_graph6("A_"));
    CHECK(r.d_prime.kind == IndexKind::Infinite);
    CHECK(r.d_small.kind == IndexKind::Infinite);
    CHECK(r.small_count == 1);
    CHECK(r.aut_order == 2);
    CHECK(r.invariants_hold());
  }
  SUBCASE("K3 has group order 6") {
    CHECK(analyze_graph(parse_graph6("Bw")).aut_order == 6);
  }
  SUBCASE("the star K_{1,5} has small index 1") {
    const Graph star = parse_edge_list("6\n0 1\n0 2\n0 3\n0 4\n0 5\n");
    const VerificationRecord r = analyze_graph(star);
    CHECK(r.d_small == IndexValue{IndexKind::Finite, 1});
    CHECK(r.small_count == 0);
    CHECK(r.method == "I");  // constructor ran: connected, order 6
  }
}

TEST_CASE("record JSON round-trip and corrupt line handling") {
  const VerificationRecord r = analyze_graph(oracles::cycle(6));
  const auto back = record_from_json(record_to_json(r));
  REQUIRE(back.has_value());
  CHECK(back->graph6 == r.graph6);
  CHECK(back->d_prime == r.d_prime);
  CHECK(back->d_small == r.d_small);
  CHECK(back->method == r.method);
  CHECK(back->aut_order == r.aut_order);

  CHECK_FALSE(record_from_json("{not json").has_value());
  CHECK_FALSE(record_from_json("{\"graph6\":\"A_\"}").has_value());  // missing fields
}

TEST_CASE("record cache") {
  const std::string dir = temp_dir();
  const std::string file = RecordCache::file_in_dir(dir);

  SUBCASE("store then lookup returns the identical record; unknown keys miss") {
    RecordCache cache(file);
    const VerificationRecord r = analyze_graph(oracles::cycle(6));
    cache.store(r);
    const auto hit = cache.lookup(r.graph6);
    REQUIRE(hit.has_value());
    CHECK(record_to_json(*hit) == record_to_json(r));
    CHECK_FALSE(cache.lookup("Bw").has_value());

    // a relabeled isomorphic graph misses: keys are exact strings
    std::vector<int> image{1, 0, 2, 3, 4, 5};
    const Graph relabeled = oracles::relabel(oracles::cycle(6), Permutation(image));
    if (to_graph6(relabeled) != r.graph6) CHECK_FALSE(cache.lookup(to_graph6(relabeled)).has_value());

    // reload from disk
    RecordCache reloaded(file);
    CHECK(reloaded.size() == 1);
    CHECK(reloaded.lookup(r.graph6).has_value());
  }

  SUBCASE("corrupt lines are skipped, not fatal") {
    {
      std::ofstream out(file);
      out << "this is not json\n";
      out << record_to_json(analyze_graph(oracles::complete(2))) << "\n";
      out << "{\"graph6\": 12}\n";
    }
    RecordCache cache(file);
    CHECK(cache.size() == 1);
    CHECK(cache.corrupt_lines() == 2);
    CHECK(cache.lookup("A_").has_value());
  }
}

TEST_CASE("verify_corpus claims on a synthetic corpus") {
  // C6, the star K_{1,5}, an asymmetric 6-vertex graph, and K2+K4 (disconnected)
  const Graph asym(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 4}, {0, 2}});
  const Graph k2_plus_k4(6, {{0, 1}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}});
  const std::vector<std::string> corpus{to_graph6(oracles::cycle(6)), to_graph6(oracles::star(5)),
                                        to_graph6(asym), to_graph6(k2_plus_k4)};

  CorpusOptions opt;

  SUBCASE("thm1 asserts the connected population and reports the disconnected one") {
    const CorpusSummary s = verify_corpus(corpus, Claim::Thm1, opt);
    CHECK(s.parsed == 4);
    CHECK(s.total == 3);
    CHECK(s.pass == 3);
    CHECK(s.fail == 0);
    CHECK(s.violators.empty());
    // K2+K4 lands in the informational disconnected section: its small index
    // is INFINITE because of the isolated edge
    CHECK(s.disconnected_total == 1);
    CHECK(s.disconnected_fail == 1);
    REQUIRE(s.disconnected_violators.size() == 1);
    CHECK(s.disconnected_violators[0] == to_graph6(k2_plus_k4));
    CHECK(s.invariant_violations == 0);
    CHECK(s.pass + s.fail == s.total);
  }

  SUBCASE("monotone passes everywhere") {
    const CorpusSummary s = verify_corpus(corpus, Claim::Monotone, opt);
    CHECK(s.total == 4);
    CHECK(s.fail == 0);
  }

  SUBCASE("kpw3 excludes graphs with isolated edges from its population") {
    const CorpusSummary s = verify_corpus(corpus, Claim::Kpw3, opt);
    CHECK(s.total == 3);  // K2+K4 has an isolated edge
    CHECK(s.fail == 0);
  }

  SUBCASE("filters narrow the corpus") {
    CorpusOptions filtered = opt;
    filtered.filters.connected_only = true;
    filtered.filters.regular_only = true;
    const CorpusSummary s = verify_corpus(corpus, Claim::Monotone, filtered);
    CHECK(s.total == 1);  // C6 only
  }

  SUBCASE("jobs 1 and jobs 4 give identical summaries") {
    CorpusOptions par = opt;
    par.jobs = 4;
    const std::string a = summary_to_json(verify_corpus(corpus, Claim::Thm1, opt));
    const std::string b = summary_to_json(verify_corpus(corpus, Claim::Thm1, par));
    CHECK(a == b);
  }

  SUBCASE("the cache short-circuits the second run and keeps results identical") {
    CorpusOptions cached = opt;
    cached.cache_file = RecordCache::file_in_dir(temp_dir());
    const std::string first = summary_to_json(verify_corpus(corpus, Claim::Thm1, cached));
    const std::string second = summary_to_json(verify_corpus(corpus, Claim::Thm1, cached));
    CHECK(first == second);
    RecordCache cache(cached.cache_file);
    CHECK(cache.size() == corpus.size());
  }
}

TEST_CASE("kpw3 on orders 3-5 lists the attainers") {
  std::vector<std::string> corpus;
  for (int n = 3; n <= 5; ++n) {
    const int pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      const Graph g = oracles::from_mask(n, mask);
      if (connected_components(g).size() == 1) corpus.push_back(to_graph6(g));
    }
  }
  const CorpusSummary s = verify_corpus(corpus, Claim::Kpw3, {});
  CHECK(s.fail == 0);
  // K3 is a known attainer: all five non-trivial automorphisms are small and
  // any 2-colouring of three edges repeats a colour on two of them
  bool k3_attains = false;
  for (const std::string& a : s.attainers)
    if (parse_graph6(a) == oracles::complete(3)) k3_attains = true;
  CHECK(k3_attains);
}

TEST_CASE("cli: analyze, index, construct, verify") {
  SUBCASE("analyze K2") {
    const auto r = run_cli("analyze A_");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"d_prime\":\"INFINITE\"") != std::string::npos);
    CHECK(r.output.find("\"small_count\":1") != std::string::npos);
  }
  SUBCASE("index C6") {
    const auto r = run_cli("index " + to_graph6(oracles::cycle(6)));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"d_small\":\"2\"") != std::string::npos);
  }
  SUBCASE("construct rejects undersized input with exit 2") {
    CHECK(run_cli("construct Bw").exit_code == 2);
  }
  SUBCASE("construct on C6 emits a verified colouring and a trace") {
    const std::string dir = temp_dir();
    const auto r = run_cli("construct " + to_graph6(oracles::cycle(6)) + " --trace-out " + dir + "/t.json");
    CHECK(r.exit_code == 0);
    const Graph c6 = oracles::cycle(6);
    const EdgeColouring c = parse_colouring_text(r.output, c6);
    CHECK(c.total_on(c6));
    std::ifstream trace(dir + "/t.json");
    std::stringstream buf;
    buf << trace.rdbuf();
    CHECK(buf.str().find("\"verified\": true") != std::string::npos);
    CHECK(buf.str().find("\"case\": \"fallback\"") != std::string::npos);
  }
  SUBCASE("verify exits 2 on a malformed corpus line") {
    const std::string dir = temp_dir();
    {
      std::ofstream out(dir + "/corpus.g6");
      out << "A_\n!!\n";
    }
    CHECK(run_cli("verify --input " + dir + "/corpus.g6 --claim monotone").exit_code == 2);
  }
  SUBCASE("verify exits 2 on an unknown claim") {
    const std::string dir = temp_dir();
    {
      std::ofstream out(dir + "/corpus.g6");
      out << "A_\n";
    }
    CHECK(run_cli("verify --input " + dir + "/corpus.g6 --claim nonsense").exit_code == 2);
  }
  SUBCASE("verify monotone on a small corpus exits 0") {
    const std::string dir = temp_dir();
    {
      std::ofstream out(dir + "/corpus.g6");
      out << "A_\nBw\n" << to_graph6(oracles::cycle(6)) << "\n";
    }
    const auto r = run_cli("verify --input " + dir + "/corpus.g6 --claim monotone --report json");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"fail\": 0") != std::string::npos);
  }
  SUBCASE("analyze reads edge lists") {
    const std::string dir = temp_dir();
    {
      std::ofstream out(dir + "/star.el");
      out << "6\n0 1\n0 2\n0 3\n0 4\n0 5\n";
    }
    const auto r = run_cli("analyze --input " + dir + "/star.el --format edgelist");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"d_small\":\"1\"") != std::string::npos);
  }
  SUBCASE("SYMBREAK_CACHE populates the cache directory") {
    const std::string dir = temp_dir();
    const std::string cmd = "SYMBREAK_CACHE=" + dir + " " + std::string(SYMBREAK_CLI_PATH) + " analyze Bw > /dev/null 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    RecordCache cache(RecordCache::file_in_dir(dir));
    CHECK(cache.lookup("Bw").has_value());
  }
  SUBCASE("stats reports distributions") {
    const std::string dir = temp_dir();
    {
      std::ofstream out(dir + "/corpus.g6");
      out << "Bw\n" << to_graph6(oracles::star(5)) << "\n";
    }
    const auto r = run_cli("stats --input " + dir + "/corpus.g6 --report csv");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("d_small,") != std::string::npos);
  }
}
