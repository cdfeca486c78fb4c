#include <benchmark/benchmark.h>

#include "redweyl/domain.hpp"
#include "redweyl/group_action.hpp"
#include "redweyl/reduced_volume.hpp"
#include "redweyl/symbols.hpp"

namespace {

void BM_MonteCarloSO3(benchmark::State& state) {
  const auto action = redweyl::GroupAction::standard_so3(3);
  const auto lap = redweyl::Symbol::euclidean_power(2);
  const auto ball = redweyl::Domain::ball(3, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(redweyl::reduced_volume_mc(action, lap, ball, 1.0, state.range(0), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloSO3)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_MonteCarloCylindrical(benchmark::State& state) {
  const auto action = redweyl::GroupAction::planar_so2(3, 0, 1);
  const auto lap = redweyl::Symbol::euclidean_power(2);
  const auto ball = redweyl::Domain::ball(3, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(redweyl::reduced_volume_mc(action, lap, ball, 1.0, state.range(0), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloCylindrical)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_QuadratureDisk(benchmark::State& state) {
  const auto action = redweyl::GroupAction::planar_so2(2, 0, 1);
  const auto lap = redweyl::Symbol::euclidean_power(2);
  const auto disk = redweyl::Domain::disk(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(redweyl::reduced_volume_quadrature(action, lap, disk, 1.0));
}
BENCHMARK(BM_QuadratureDisk)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
