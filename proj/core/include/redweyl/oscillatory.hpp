#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "redweyl/reduced_volume.hpp"
#include "redweyl/representations.hpp"

namespace redweyl {

// Smooth compactly supported G-invariant amplitude on R^2 x R^2:
//   a(x, xi) = b(|x| / x_radius) b((2|xi| - xi_inner - xi_outer) / (xi_outer - xi_inner))
//              (1 + skew <x, xi>),
// with b(t) = exp(-1 / (1 - t^2)) on |t| < 1. The skew factor is invariant and
// odd in xi; it leaves the leading term unchanged and keeps the first
// correction from cancelling by symmetry.
struct AmplitudeSpec {
  double x_radius = 1.0;
  double xi_inner = 0.5;
  double xi_outer = 1.5;
  double skew = 1.0;

  double radial_x(double r) const;
  double radial_xi(double rho) const;
  double operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& xi) const;
  void validate() const;
};

inline constexpr double kMinPointsPerWavelength = 10.0;
inline constexpr double kMinMu = 0.02;
inline constexpr double kMaxMu = 1.0;

struct OscillatoryOptions {
  double points_per_wavelength = 10.0;
  // Replaces the group integral by the identity element (phase = 0).
  bool identity_only = false;
};

// I(mu) = int_G int int e^{i <x - kx, xi> / mu} conj(chi(k)) a(x, xi) dx dxi/(2 pi)^2 dk
// for the planar SO(2) action on R^2. The common rotation of (x, xi) is
// integrated exactly; the remaining group angle, |x|, |xi| and the relative
// angle use trapezoid / Gauss-Legendre / Gauss-Legendre / trapezoid rules
// with the requested points per wavelength of the phase (at least 4 P nodes).
// Throws std::invalid_argument for P < 10, mu outside [0.02, 1] or another
// group.
std::complex<double> eval_I(const GroupAction& action, const IrrepLabel& chi, const AmplitudeSpec& amp,
                            double mu, const OscillatoryOptions& options = {});

// (1/(2 pi)^n) [rho_chi|H0 : 1] int_{Reg Omega_0} a dsigma / vol(G z) through
// integrate_zero_level.
double leading_term(const GroupAction& action, const IrrepLabel& chi, const AmplitudeSpec& amp,
                    const QuadratureGrid& grid = {128, 128, 16});

struct ConvergenceRow {
  double mu;
  std::complex<double> integral;
  double leading;
  double abs_error;        // |I / (2 pi mu)^kappa - L0|
  double empirical_order;  // NaN on the first row
};

std::vector<ConvergenceRow> convergence_report(const GroupAction& action, const IrrepLabel& chi,
                                               const AmplitudeSpec& amp, const std::vector<double>& mus,
                                               const OscillatoryOptions& options = {});

}  // namespace redweyl
