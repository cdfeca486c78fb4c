#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "redweyl/group_action.hpp"

namespace redweyl {

class Domain;
class Symbol;

// Parametrization of Reg Omega_0 for a continuous group action satisfying
// Assumption 1. Coordinates are
//
//   u = (r, s, eta angles [n-1], omega angles [n-kappa-1]),
//   xi = s eta(angles),  x = r theta,  theta = F(eta) omega,
//
// where the columns of F(eta) are an orthonormal frame of (g eta)^perp, the
// directions x may take once xi is fixed. When that space is a line
// (n - kappa = 1) theta = eta and s ranges over [-S, S] so both signs of
// <x, xi> are covered; otherwise s lies in (0, S].
//
// Hyperspherical coordinates are taken in a permuted order that puts the
// rotation plane (or the rotated 3-space) last, so the azimuth turns with the
// group and the frame F is smooth away from the singular set.
class RegularChart {
 public:
  RegularChart(const GroupAction& action, double r_max, double s_max);

  int ambient_dim() const { return n_; }
  int kappa() const { return kappa_; }
  int dimension() const { return 2 * n_ - kappa_; }
  int num_eta_angles() const { return n_ - 1; }
  int num_omega_angles() const { return n_ - kappa_ - 1; }
  bool signed_momentum() const { return n_ - kappa_ == 1; }

  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }
  double box_volume() const;
  // Whether angle slot a (0-based among all angles) is an azimuth.
  bool is_azimuth(int a) const;

  Eigen::VectorXd eta(const double* eta_angles) const;
  Eigen::VectorXd theta(const double* eta_angles, const double* omega_angles) const;
  PhasePoint map(const Eigen::VectorXd& u) const;

  // Gram blocks of the angle columns: the tangent map's Gram matrix is
  // diag(1, 1) (+) (r^2 Theta + s^2 H), because the r and s columns are unit
  // vectors orthogonal to everything else.
  struct AngularGram {
    Eigen::MatrixXd theta;
    Eigen::MatrixXd eta;
  };
  AngularGram angular_gram(const double* angles) const;

  // sqrt det Gram of the tangent map, by central differences of step 1e-5.
  double density(const Eigen::VectorXd& u) const;
  static double density(const AngularGram& g, double r, double s);
  // Same quantity from a brute-force finite-difference Jacobian of map().
  double full_gram_density(const Eigen::VectorXd& u) const;
  // Hand-derived density for the planar disk, the standard SO(3) action on
  // R^3 and the cylindrical action on R^3; nullopt otherwise.
  std::optional<double> closed_form_density(const Eigen::VectorXd& u) const;

  const GroupAction& action() const { return *action_; }

 private:
  const GroupAction* action_;
  int n_;
  int kappa_;
  std::vector<int> perm_;  // hyperspherical slot -> ambient coordinate
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
};

inline constexpr double kFiniteDifferenceStep = 1e-5;
inline constexpr double kMinRadius = 1e-8;

struct RegularSample {
  PhasePoint point;
  Eigen::VectorXd chart_coords;
  double density = 0.0;
  double orbit_volume = 0.0;
  // box volume * density * 1{x in X, a <= level} / orbit volume: one draw of
  // the importance-sampling estimator of the reduced volume.
  double weight = 0.0;
};

// Riemannian volume of the orbit through a point of Omega_0. On Omega_0 the
// SO(3) orbits are never three-dimensional (x and xi are parallel in the
// rotated block), so this is 2 pi |A z| or 4 pi (|P x|^2 + |P xi|^2); it
// agrees with orbit_data there and is much cheaper.
double zero_level_orbit_volume(const GroupAction& action, const PhasePoint& z);

struct ChartBounds {
  double r_max;
  double s_max;
};

// R from the domain's bounding box, S = (level / C0)^{1/2m} with C0 the
// sampled ellipticity margin. Throws AssumptionViolation when C0 <= 0.
ChartBounds chart_bounds(const Domain& domain, const Symbol& symbol, double level);

// Uniform draws in chart coordinates; draws with r < 1e-8 are redrawn.
std::vector<RegularSample> sample_regular_zero_level(const GroupAction& action, const Domain& domain,
                                                     const Symbol& symbol, double level, long n_samples,
                                                     std::uint64_t seed);

// Single draw for streaming use. `index` selects the counter-based stream.
RegularSample draw_regular_sample(const RegularChart& chart, const Domain& domain, const Symbol& symbol,
                                  double level, std::uint64_t seed, std::uint64_t index);

}  // namespace redweyl
