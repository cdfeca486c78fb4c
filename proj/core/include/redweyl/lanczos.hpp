#pragma once

#include <complex>
#include <vector>

#include <Eigen/Sparse>

namespace redweyl {

struct SliceOptions {
  int max_per_slice = 25;   // eigenvalues handled by one shift-invert run
  double tolerance = 1e-8;  // residual |B v - lambda v| relative to max(1, |lambda|)
  int max_restarts = 8;
  unsigned long seed = 1;
};

struct SliceResult {
  std::vector<double> eigenvalues;  // ascending, with multiplicity
  int factorizations = 0;
  int lanczos_steps = 0;
  double max_residual = 0.0;
};

// Number of eigenvalues of the Hermitian matrix B strictly below sigma, from
// the inertia of an LDL^T factorization of B - sigma I.
template <class Scalar>
long count_below(const Eigen::SparseMatrix<Scalar>& b, double sigma);

// All eigenvalues of the Hermitian matrix B in [lo, hi). Inertia counts split
// the interval into slices with at most max_per_slice eigenvalues; each slice
// is solved by shift-invert Lanczos with full reorthogonalization, locking
// converged vectors and restarting until the inertia count is matched.
// Throws NumericalFailure when a slice cannot be resolved.
template <class Scalar>
SliceResult eigenvalues_in_interval(const Eigen::SparseMatrix<Scalar>& b, double lo, double hi,
                                    const SliceOptions& options = {});

extern template long count_below(const Eigen::SparseMatrix<double>&, double);
extern template long count_below(const Eigen::SparseMatrix<std::complex<double>>&, double);
extern template SliceResult eigenvalues_in_interval(const Eigen::SparseMatrix<double>&, double, double,
                                                    const SliceOptions&);
extern template SliceResult eigenvalues_in_interval(const Eigen::SparseMatrix<std::complex<double>>&,
                                                    double, double, const SliceOptions&);

}  // namespace redweyl
