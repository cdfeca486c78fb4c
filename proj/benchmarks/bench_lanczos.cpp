#include <benchmark/benchmark.h>

#include <vector>

#include <Eigen/Sparse>

#include "redweyl/lanczos.hpp"

namespace {

// Five-point Dirichlet Laplacian on an n x n interior grid of the unit square.
Eigen::SparseMatrix<double> laplacian(int n) {
  const double inv_h2 = (n + 1.0) * (n + 1.0);
  std::vector<Eigen::Triplet<double>> t;
  auto id = [n](int i, int j) { return i * n + j; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      t.emplace_back(id(i, j), id(i, j), 4 * inv_h2);
      if (i > 0) t.emplace_back(id(i, j), id(i - 1, j), -inv_h2);
      if (i + 1 < n) t.emplace_back(id(i, j), id(i + 1, j), -inv_h2);
      if (j > 0) t.emplace_back(id(i, j), id(i, j - 1), -inv_h2);
      if (j + 1 < n) t.emplace_back(id(i, j), id(i, j + 1), -inv_h2);
    }
  Eigen::SparseMatrix<double> b(n * n, n * n);
  b.setFromTriplets(t.begin(), t.end());
  return b;
}

void BM_InertiaCount(benchmark::State& state) {
  const auto b = laplacian(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(redweyl::count_below(b, 2000.0));
}
BENCHMARK(BM_InertiaCount)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

// Roughly the lowest hundred eigenvalues, resolved slice by slice.
void BM_EigenvaluesInInterval(benchmark::State& state) {
  const auto b = laplacian(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(redweyl::eigenvalues_in_interval(b, 0.0, 1200.0));
}
BENCHMARK(BM_EigenvaluesInInterval)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
