#include <benchmark/benchmark.h>

#include "cmjtree/centroid_tracker.hpp"
#include "cmjtree/growth.hpp"
#include "cmjtree/malthus.hpp"
#include "cmjtree/tree.hpp"

namespace {

using namespace cmjtree;

void BM_GrowDiscrete(benchmark::State& state) {
  const auto spec = AttractionSpec::AlphaSublinear(0.5);
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(grow_discrete(spec, n, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GrowDiscrete)->RangeMultiplier(10)->Range(1'000, 1'000'000)->Unit(benchmark::kMillisecond);

void BM_GrowCmj(benchmark::State& state) {
  const auto spec = AttractionSpec::AlphaSublinear(0.5);
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(grow_cmj(spec, StopRule::Population(n), rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GrowCmj)->RangeMultiplier(10)->Range(1'000, 1'000'000)->Unit(benchmark::kMillisecond);

void BM_PsiAll(benchmark::State& state) {
  Rng rng(3);
  const GrowingTree tree = grow_discrete(AttractionSpec::AlphaSublinear(0.5), state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(psi_all(tree));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PsiAll)->RangeMultiplier(10)->Range(1'000, 1'000'000)->Unit(benchmark::kMicrosecond);

void BM_CentroidTracking(benchmark::State& state) {
  Rng rng(4);
  const GrowingTree grown = grow_discrete(AttractionSpec::AlphaSublinear(0.5), state.range(0), rng);
  for (auto _ : state) {
    GrowingTree tree;
    CentroidTracker tracker(tree);
    for (Vertex v = 1; v < grown.size(); ++v) tracker.on_birth(tree.add_child(grown.parent(v)));
    benchmark::DoNotOptimize(tracker.selected());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CentroidTracking)->RangeMultiplier(10)->Range(1'000, 100'000)->Unit(benchmark::kMillisecond);

void BM_MeanOffspring(benchmark::State& state) {
  const auto spec = AttractionSpec::AlphaSublinear(static_cast<double>(state.range(0)) / 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(mean_offspring(spec, 1.6));
}
BENCHMARK(BM_MeanOffspring)->DenseRange(1, 7, 3)->Unit(benchmark::kMicrosecond);

void BM_SolveMalthusian(benchmark::State& state) {
  const auto spec = AttractionSpec::AlphaSublinear(static_cast<double>(state.range(0)) / 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_malthusian(spec));
}
BENCHMARK(BM_SolveMalthusian)->DenseRange(1, 7, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
