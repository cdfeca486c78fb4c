#include <benchmark/benchmark.h>

#include "redweyl/group_action.hpp"
#include "redweyl/oscillatory.hpp"
#include "redweyl/representations.hpp"

namespace {

// Cost grows like mu^-4 through the points-per-wavelength rule.
void BM_EvalI(benchmark::State& state) {
  const auto action = redweyl::GroupAction::planar_so2(2, 0, 1);
  const redweyl::IrrepLabel trivial{redweyl::GroupKind::PlanarSO2, 0};
  const double mu = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(redweyl::eval_I(action, trivial, {}, mu));
}
BENCHMARK(BM_EvalI)->Arg(2)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_LeadingTerm(benchmark::State& state) {
  const auto action = redweyl::GroupAction::planar_so2(2, 0, 1);
  const redweyl::IrrepLabel trivial{redweyl::GroupKind::PlanarSO2, 0};
  for (auto _ : state) benchmark::DoNotOptimize(redweyl::leading_term(action, trivial, {}));
}
BENCHMARK(BM_LeadingTerm)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
