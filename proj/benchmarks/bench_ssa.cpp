#include <benchmark/benchmark.h>

#include "drnet/ssa.hpp"
#include "nets.hpp"

static void SsaSingleReplicate(benchmark::State& state) {
  const auto net = benchnets::decaying_dimerization();
  const auto c0 = benchnets::vec3(900, 90, 100);
  std::uint64_t rep = 0;
  for (auto _ : state) {
    drnet::Xoshiro256 rng = drnet::Xoshiro256::stream(1, rep++);
    auto x = drnet::sample_product_poisson(c0, rng);
    x = drnet::simulate(net, x, 2.0, rng);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(SsaSingleReplicate)->Unit(benchmark::kMillisecond);

static void SsaEnsemble(benchmark::State& state) {
  const auto net = benchnets::decaying_dimerization();
  const auto c0 = benchnets::vec3(900, 90, 100);
  for (auto _ : state) {
    const auto summary = drnet::run_ensemble(net, c0, 2.0, state.range(), 7);
    benchmark::DoNotOptimize(summary.species[0].mean);
  }
  state.SetItemsProcessed(state.iterations() * state.range());
}
BENCHMARK(SsaEnsemble)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

static void PoissonSampler(benchmark::State& state) {
  drnet::Xoshiro256 rng(3);
  const double mean = static_cast<double>(state.range());
  for (auto _ : state) benchmark::DoNotOptimize(drnet::poisson_sample(mean, rng));
}
BENCHMARK(PoissonSampler)->Arg(2)->Arg(25)->Arg(900);

BENCHMARK_MAIN();
