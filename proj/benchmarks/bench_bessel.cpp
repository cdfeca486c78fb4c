#include <benchmark/benchmark.h>

#include "redweyl/bessel.hpp"

namespace {

void BM_BesselValue(benchmark::State& state) {
  const double nu = static_cast<double>(state.range(0));
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(redweyl::bessel_j(nu, x));
    x = x < 500.0 ? x * 1.07 : 0.5;
  }
}
BENCHMARK(BM_BesselValue)->Arg(0)->Arg(5)->Arg(50)->Arg(400);

// Every zero of J_nu below t: the work behind one disk character at T = t.
void BM_BesselZeros(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(redweyl::bessel_zeros(3.0, t));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BesselZeros)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oAuto);

void BM_AnnulusZeros(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(redweyl::annulus_cross_zeros(2.0, 0.5, 1.0, 500.0));
}
BENCHMARK(BM_AnnulusZeros);

}  // namespace

BENCHMARK_MAIN();
