#include <benchmark/benchmark.h>

#include "octopia/filter.hpp"
#include "octopia/workload.hpp"

using namespace octopia;

static void BM_Overlap(benchmark::State& state) {
  const auto adv = stock_advertisement("S042");
  const auto sub = parse_filter("symbol = S042, price between 10 12, volume > 100");
  for (auto _ : state) benchmark::DoNotOptimize(overlaps(adv, sub));
}
BENCHMARK(BM_Overlap);

static void BM_Match(benchmark::State& state) {
  Rng rng(1);
  const auto quote = make_quote(rng, "S042");
  const auto sub = parse_filter("symbol = S042, price between 10 12, volume > 100");
  for (auto _ : state) benchmark::DoNotOptimize(matches(quote, sub));
}
BENCHMARK(BM_Match);

static void BM_ParseFilter(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_filter("symbol = S042, price between 10 12, volume > 100, exchange = NYSE"));
  }
}
BENCHMARK(BM_ParseFilter);
