#include <benchmark/benchmark.h>

#include "drnet/dr.hpp"
#include "drnet/expm.hpp"
#include "drnet/rng.hpp"
#include "nets.hpp"

static void VerifyBalance(benchmark::State& state) {
  const auto net = benchnets::squares_exchange();
  const auto c0 = benchnets::vec2(1, 2);
  for (auto _ : state) {
    const auto rep = drnet::verify_dr(net, c0, {.T = 10.0});
    benchmark::DoNotOptimize(rep.max_residual);
  }
}
BENCHMARK(VerifyBalance)->Unit(benchmark::kMillisecond);

static void MatrixExponential(benchmark::State& state) {
  const int n = static_cast<int>(state.range());
  drnet::Xoshiro256 rng(5);
  Eigen::MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = 6.0 * (rng.uniform01() - 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(drnet::expm(A));
}
BENCHMARK(MatrixExponential)->Arg(5)->Arg(20)->Arg(50);
