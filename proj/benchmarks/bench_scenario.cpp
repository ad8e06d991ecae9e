#include <benchmark/benchmark.h>

#include "octopia/scenario.hpp"

using namespace octopia;

static ScenarioConfig workload(RoutingMode mode) {
  ScenarioConfig c;
  c.preset = "fig10";
  c.routing = mode;
  c.seed = 3;
  WorkloadSpec w;
  w.publishers = 20;
  w.subscribers = 200;
  w.notifications = 1000;
  c.workload = w;
  return c;
}

static void BM_Scenario(benchmark::State& state) {
  const auto c = workload(static_cast<RoutingMode>(state.range(0)));
  std::uint64_t events = 0;
  for (auto _ : state) {
    const auto r = run_scenario(c);
    events += r.report.events;
  }
  state.counters["events/s"] = benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_Scenario)
    ->Arg(static_cast<int>(RoutingMode::Snr))
    ->Arg(static_cast<int>(RoutingMode::Idr))
    ->Arg(static_cast<int>(RoutingMode::TidStatic))
    ->Unit(benchmark::kMillisecond);
