#include <benchmark/benchmark.h>

#include "octopia/graph.hpp"
#include "octopia/presets.hpp"
#include "octopia/scot.hpp"

using namespace octopia;

static void BM_Product(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto h = complete_graph(n);
  const auto g = preset_acyclic_factor("fig10");
  for (auto _ : state) benchmark::DoNotOptimize(cartesian_product(g, h));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Product)->RangeMultiplier(2)->Range(2, 32)->Complexity();

static void BM_ConnectivityBounds(benchmark::State& state) {
  const auto g = preset_acyclic_factor("fig10");
  const auto h = complete_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(connectivity_bounds(g, h));
}
BENCHMARK(BM_ConnectivityBounds)->Arg(5)->Arg(14);

static void BM_BuildScot(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(preset_topology("fig10"));
}
BENCHMARK(BM_BuildScot);
