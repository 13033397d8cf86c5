#include <benchmark/benchmark.h>

#include "drnet/cme.hpp"
#include "nets.hpp"

static void TruncatedMasterEquation(benchmark::State& state) {
  const auto net = benchnets::squares_exchange();
  const auto c0 = benchnets::vec2(1, 2);
  const std::int64_t b = state.range();
  for (auto _ : state) {
    const auto pmf = drnet::truncated_cme(net, c0, {b, b}, 0.05, {.dt = 2e-4});
    benchmark::DoNotOptimize(pmf.leaked);
  }
  state.SetComplexityN((b + 1) * (b + 1));
}
BENCHMARK(TruncatedMasterEquation)->Arg(20)->Arg(30)->Arg(40)->Unit(benchmark::kMillisecond)
    ->Complexity();
