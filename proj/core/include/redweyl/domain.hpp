#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace redweyl {

class GroupAction;

enum class DomainKind { Disk, Annulus, Ball, Box, Indicator };

// A bounded open set X in R^n. Besides membership, each kind knows a bounding
// box, the radial extent along rays from the origin, and the constant c of the
// boundary collar bound vol((dX)_rho) <= c rho.
class Domain {
 public:
  using Predicate = std::function<bool(const Eigen::VectorXd&)>;

  static Domain disk(double radius);
  static Domain annulus(double r_in, double r_out);
  static Domain ball(int n, double radius);
  static Domain box(Eigen::VectorXd half_widths);
  // Arbitrary membership test. Ray intervals assume X is star-shaped about the
  // origin. A missing collar constant means Assumption 2 cannot be checked.
  static Domain indicator(int n, Predicate contains, Eigen::VectorXd half_widths,
                          std::optional<double> collar_constant, std::string name);

  DomainKind kind() const { return kind_; }
  int dim() const { return n_; }
  bool contains(const Eigen::VectorXd& x) const;
  const Eigen::VectorXd& half_widths() const { return half_widths_; }
  // Radius of the ball circumscribing the bounding box.
  double bounding_radius() const { return half_widths_.norm(); }
  // {r >= 0 : r theta in X} for a unit vector theta, as a single interval.
  std::pair<double, double> ray_interval(const Eigen::VectorXd& theta) const;
  double volume() const;
  std::optional<double> collar_constant() const { return collar_; }
  bool origin_on_boundary() const;
  std::string describe() const;

  double radius() const { return radius_; }
  double inner_radius() const { return inner_; }

 private:
  DomainKind kind_ = DomainKind::Disk;
  int n_ = 2;
  double radius_ = 1.0;
  double inner_ = 0.0;
  Eigen::VectorXd half_widths_;
  std::optional<double> collar_;
  Predicate predicate_;
  std::string name_;
};

// Fraction of sampled points whose membership changes under a random group
// element (0 for an invariant domain).
double invariance_residual(const Domain& domain, const GroupAction& action, long n_samples,
                           std::uint64_t seed);

}  // namespace redweyl
