// OpenMP kernels against their serial references on a seeded random graph.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <numeric>

#include "mdlsum/decomposition.hpp"
#include "mdlsum/kcore.hpp"
#include "mdlsum/labeling.hpp"
#include "mdlsum/rng.hpp"
#include "mdlsum/spectral.hpp"

namespace {

using namespace mdlsum;

// Sparse random graph with a planted dense block so cores are non-trivial.
const Graph& fixture(std::size_t n) {
  static std::vector<std::pair<std::size_t, Graph>> cache;
  for (const auto& [size, g] : cache)
    if (size == n) return g;
  Rng rng(42);
  std::vector<Edge> e;
  for (std::size_t i = 0; i < 4 * n; ++i)
    e.emplace_back(static_cast<NodeId>(rng.below(n)), static_cast<NodeId>(rng.below(n)));
  for (NodeId u = 0; u < 60; ++u)
    for (NodeId v = u + 1; v < 60; ++v)
      if (rng.uniform() < 0.5) e.emplace_back(u, v);
  cache.emplace_back(n, Graph::from_edges(n, e));
  return cache.back().second;
}

void BM_CoreSerial(benchmark::State& state) {
  const Graph& g = fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(core_numbers(g));
}

void BM_CoreParallel(benchmark::State& state) {
  const Graph& g = fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(core_numbers_parallel(g));
}

std::vector<CandidateSubgraph> candidates_for(const Graph& g) {
  DecomposerConfig cfg;
  cfg.method = Method::SlashBurn;
  return slashburn_decompose(g, cfg);
}

void BM_LabelSerial(benchmark::State& state) {
  const Graph& g = fixture(static_cast<std::size_t>(state.range(0)));
  const auto cands = candidates_for(g);
  for (auto _ : state) benchmark::DoNotOptimize(label_candidates_serial(g, cands));
  state.counters["candidates"] = static_cast<double>(cands.size());
}

void BM_LabelParallel(benchmark::State& state) {
  const Graph& g = fixture(static_cast<std::size_t>(state.range(0)));
  const auto cands = candidates_for(g);
  for (auto _ : state) benchmark::DoNotOptimize(label_candidates(g, cands));
  state.counters["candidates"] = static_cast<double>(cands.size());
}

void BM_LaplacianSerial(benchmark::State& state) {
  const Graph& g = fixture(static_cast<std::size_t>(state.range(0)));
  ShiftedLaplacian op(g);
  std::vector<double> x(g.node_count()), y(g.node_count());
  std::iota(x.begin(), x.end(), 1.0);
  for (auto _ : state) {
    op.apply_serial(x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

void BM_LaplacianParallel(benchmark::State& state) {
  const Graph& g = fixture(static_cast<std::size_t>(state.range(0)));
  ShiftedLaplacian op(g);
  std::vector<double> x(g.node_count()), y(g.node_count());
  std::iota(x.begin(), x.end(), 1.0);
  for (auto _ : state) {
    op.apply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

}  // namespace

BENCHMARK(BM_CoreSerial)->Arg(10000)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoreParallel)->Arg(10000)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LabelSerial)->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LabelParallel)->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LaplacianSerial)->Arg(10000)->Arg(200000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LaplacianParallel)->Arg(10000)->Arg(200000)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
