#include <benchmark/benchmark.h>

#include <random>

#include "symbreak/automorphism.hpp"
#include "symbreak/constructor.hpp"
#include "symbreak/graph.hpp"
#include "symbreak/solver.hpp"

namespace {

symbreak::Graph cycle(int n) {
  std::vector<symbreak::Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return symbreak::Graph(n, e);
}

symbreak::Graph complete(int n) {
  std::vector<symbreak::Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return symbreak::Graph(n, e);
}

symbreak::Graph random_graph(std::uint64_t seed, int n, double p) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<symbreak::Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) e.emplace_back(u, v);
  return symbreak::Graph(n, e);
}

void BM_ParseGraph6(benchmark::State& state) {
  const std::string line = symbreak::to_graph6(random_graph(7, static_cast<int>(state.range(0)), 0.4));
  for (auto _ : state) {
    auto g = symbreak::parse_graph6(line);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_ParseGraph6)->Arg(8)->Arg(20)->Arg(40)->Arg(62);

void BM_AutomorphismGroup(benchmark::State& state) {
  const symbreak::Graph g = random_graph(11, static_cast<int>(state.range(0)), 0.5);
  for (auto _ : state) {
    auto grp = symbreak::automorphism_group(g);
    benchmark::DoNotOptimize(grp);
  }
}
BENCHMARK(BM_AutomorphismGroup)->Arg(6)->Arg(8)->Arg(10)->Arg(12);

void BM_AutomorphismGroupComplete(benchmark::State& state) {
  const symbreak::Graph g = complete(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto grp = symbreak::automorphism_group(g);
    benchmark::DoNotOptimize(grp);
  }
}
BENCHMARK(BM_AutomorphismGroupComplete)->Arg(6)->Arg(7)->Arg(8);

void BM_SmallIndexCycle(benchmark::State& state) {
  const symbreak::Graph g = cycle(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto r = symbreak::small_distinguishing_index(g);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_SmallIndexCycle)->Arg(6)->Arg(8)->Arg(10)->Arg(12);

void BM_Construct(benchmark::State& state) {
  // wheel: hub 0 joined to the cycle 1..7
  std::vector<symbreak::Edge> e;
  for (int i = 1; i <= 7; ++i) {
    e.emplace_back(0, i);
    e.emplace_back(i, i == 7 ? 1 : i + 1);
  }
  const symbreak::Graph g(8, e);
  for (auto _ : state) {
    auto r = symbreak::construct(g);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_Construct);

}  // namespace

BENCHMARK_MAIN();
