#pragma once

#include <vector>

namespace redweyl {

struct BesselValue {
  double j;        // J_nu(x)
  double jprime;   // J_nu'(x)
};

// J_nu(x) for nu >= 0 and x >= 0 by Miller's backward recurrence normalized
// with the Neumann series (x/2)^{nu0} = sum_k (nu0 + 2k) Gamma(nu0 + k) / k!
// J_{nu0 + 2k}(x), nu0 = frac(nu). Accurate to a few ulps of max(|J|, 1e-16)
// in the oscillatory region. Throws NumericalFailure for nu > 1e5.
BesselValue bessel_j(double nu, double x);

// All zeros of J_nu in (0, t_max], ascending, to 1e-10 absolute.
std::vector<double> bessel_zeros(double nu, double t_max);

// Uniform (Debye) approximation to #{k : j_{nu,k} <= t}:
// (sqrt(t^2 - nu^2) - nu arccos(nu / t)) / pi for t > nu, else 0.
double uniform_zero_count(double nu, double t);

// Zeros in (0, t_max] of J_nu(a t) Y_nu(b t) - J_nu(b t) Y_nu(a t), the radial
// Dirichlet eigenvalues sqrt(lambda) of the annulus a < r < b.
std::vector<double> annulus_cross_zeros(double nu, double a, double b, double t_max);

}  // namespace redweyl
