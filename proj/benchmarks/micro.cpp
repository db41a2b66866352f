#include <benchmark/benchmark.h>

#include <random>

#include "gnmwis/dynamics.hpp"
#include "gnmwis/enumeration.hpp"
#include "gnmwis/oracle.hpp"
#include "support/corpus.hpp"

using namespace gnmwis;

namespace {

/// About `degree * n / 2` uniformly random edges; O(n) to build.
WeightedGraph sparse_graph(std::size_t n, double degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  std::uniform_real_distribution<double> wd(0.1, 10.0);
  std::vector<Edge> edges;
  const auto m = static_cast<std::size_t>(degree * static_cast<double>(n) / 2);
  while (edges.size() < m) {
    const Vertex a = pick(rng), b = pick(rng);
    if (a != b) edges.push_back({a, b});
  }
  std::vector<double> w(n);
  for (auto& x : w) x = wd(rng);
  return build_graph(n, edges, w);
}

}  // namespace

static void BM_GnStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto g = sparse_graph(n, 8.0, 1);
  auto x = init_random(n, 1);
  std::vector<double> out(n);
  for (auto _ : state) {
    gn_step(g, x.span(), 1.2, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n + 2 * g.edge_count()));
}
BENCHMARK(BM_GnStep)->RangeMultiplier(8)->Range(64, 1 << 18);

static void BM_Pursuit(benchmark::State& state) {
  auto g = sparse_graph(static_cast<std::size_t>(state.range(0)), 8.0, 2);
  for (auto _ : state) {
    auto r = run_wrgn(g, init_random(g.size(), 3), GammaSchedule::pursuit_default());
    benchmark::DoNotOptimize(r.state.values().data());
  }
}
BENCHMARK(BM_Pursuit)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);

static void BM_BruteForce(benchmark::State& state) {
  std::mt19937_64 rng(3);
  auto g = testing::random_graph(rng, static_cast<std::size_t>(state.range(0)), 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_mwis(g).weight);
}
BENCHMARK(BM_BruteForce)->DenseRange(16, 32, 8)->Unit(benchmark::kMicrosecond);

static void BM_CanonicalCode(benchmark::State& state) {
  auto graphs = connected_graphs(static_cast<std::size_t>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(canonical_code(graphs[i]));
    i = (i + 1) % graphs.size();
  }
}
BENCHMARK(BM_CanonicalCode)->DenseRange(5, 7);

BENCHMARK_MAIN();
