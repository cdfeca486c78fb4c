#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "redweyl/estimate.hpp"
#include "redweyl/group_action.hpp"

namespace redweyl {

class Domain;
class Symbol;
class RegularChart;

inline constexpr double kLowConfidenceRatio = 0.05;

// Monte Carlo estimate of
//   vol([a^{-1}((-inf, level]) cap Reg Omega_0] / G)
//     = int_{Reg Omega_0} 1{x in X} 1{a(z) <= level} dsigma(z) / vol(G z).
// For finite groups this is vol{(x, xi) : x in X, a <= level} / |G| by plain
// phase-space sampling. `momentum_bound` overrides S so that several levels
// can share one set of draws.
MCEstimate reduced_volume_mc(const GroupAction& action, const Symbol& symbol, const Domain& domain,
                             double level, long n_samples, std::uint64_t seed,
                             std::optional<double> momentum_bound = std::nullopt);

struct QuadratureGrid {
  int radial = 64;
  int momentum = 64;
  int angular = 16;

  QuadratureGrid halved() const;
};

struct QuadratureEstimate {
  double value = 0.0;
  double coarse_value = 0.0;      // same rule on the halved grid
  double error_estimate = 0.0;    // |value - coarse_value|
  double richardson_ratio = 1.0;  // max(value / coarse, coarse / value)
  bool too_coarse = false;        // richardson_ratio > 1.05
};

inline constexpr double kRichardsonLimit = 1.05;

// Tensor-product quadrature of the same integral: Gauss-Legendre in r, s and
// the polar angles, trapezoid in the azimuths. The r and s ranges are cut
// exactly at the domain boundary and the sublevel set, so the integrand seen
// by each rule is smooth.
QuadratureEstimate reduced_volume_quadrature(const GroupAction& action, const Symbol& symbol,
                                             const Domain& domain, double level,
                                             const QuadratureGrid& grid = {});

// Generic integral of weight(z) dsigma(z) / vol(G z) over the part of
// Reg Omega_0 cut out by r_interval(theta) and s_intervals(x, eta). The s
// intervals live on the signed line; for charts with s > 0 they are clipped.
struct ZeroLevelIntegrand {
  std::function<std::pair<double, double>(const Eigen::VectorXd& theta)> r_interval;
  std::function<std::vector<std::pair<double, double>>(const Eigen::VectorXd& x,
                                                       const Eigen::VectorXd& eta)>
      s_intervals;
  std::function<double(const PhasePoint& z)> weight;  // empty means 1
};

double integrate_zero_level(const RegularChart& chart, const ZeroLevelIntegrand& f,
                            const QuadratureGrid& grid);

// Closed-form reduced volumes: disk_so2_laplacian = 2, ball_so3_laplacian = 2,
// ball_cyl_so2_laplacian = pi^2 / 2.
double analytic_oracle(std::string_view case_id);
std::vector<std::string_view> analytic_oracle_cases();

}  // namespace redweyl
