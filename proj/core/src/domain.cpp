#include "redweyl/domain.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "redweyl/group_action.hpp"
#include "redweyl/random.hpp"
#include "redweyl/spherical.hpp"

namespace redweyl {

Domain Domain::disk(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("disk radius must be positive");
  Domain d;
  d.kind_ = DomainKind::Disk;
  d.n_ = 2;
  d.radius_ = radius;
  d.half_widths_ = Eigen::VectorXd::Constant(2, radius);
  d.collar_ = 4.0 * std::numbers::pi * radius;  // exact for rho <= R
  return d;
}

Domain Domain::annulus(double r_in, double r_out) {
  if (!(r_in > 0.0) || !(r_out > r_in) || !std::isfinite(r_out))
    throw std::invalid_argument("annulus needs 0 < r_in < r_out");
  Domain d;
  d.kind_ = DomainKind::Annulus;
  d.n_ = 2;
  d.radius_ = r_out;
  d.inner_ = r_in;
  d.half_widths_ = Eigen::VectorXd::Constant(2, r_out);
  d.collar_ = 4.0 * std::numbers::pi * (r_in + r_out);  // exact for rho <= r_in
  return d;
}

Domain Domain::ball(int n, double radius) {
  if (n < 1) throw std::invalid_argument("ball dimension must be positive");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("ball radius must be positive");
  Domain d;
  d.kind_ = n == 2 ? DomainKind::Disk : DomainKind::Ball;
  d.n_ = n;
  d.radius_ = radius;
  d.half_widths_ = Eigen::VectorXd::Constant(n, radius);
  // omega ((R + rho)^n - (R - rho)^n) <= 2 |S^{n-1}| (2R)^{n-1} rho for rho <= R.
  d.collar_ = 2.0 * sphere_area(n) * std::pow(2.0 * radius, n - 1);
  return d;
}

Domain Domain::box(Eigen::VectorXd half_widths) {
  if (half_widths.size() == 0 || !(half_widths.minCoeff() > 0.0) || !half_widths.allFinite())
    throw std::invalid_argument("box half-widths must be positive");
  Domain d;
  d.kind_ = DomainKind::Box;
  d.n_ = static_cast<int>(half_widths.size());
  d.radius_ = half_widths.norm();
  d.half_widths_ = std::move(half_widths);
  // Shell between the boxes with half-widths a - rho and a + rho, for rho <= min a.
  double c = 0.0;
  for (int i = 0; i < d.n_; ++i) {
    double face = 1.0;
    for (int j = 0; j < d.n_; ++j)
      if (j != i) face *= 4.0 * d.half_widths_(j);
    c += 4.0 * face;
  }
  d.collar_ = c;
  return d;
}

Domain Domain::indicator(int n, Predicate contains, Eigen::VectorXd half_widths,
                         std::optional<double> collar_constant, std::string name) {
  if (!contains) throw std::invalid_argument("indicator domain needs a predicate");
  if (half_widths.size() != n || !(half_widths.minCoeff() > 0.0))
    throw std::invalid_argument("indicator domain needs a positive bounding box");
  Domain d;
  d.kind_ = DomainKind::Indicator;
  d.n_ = n;
  d.radius_ = half_widths.norm();
  d.half_widths_ = std::move(half_widths);
  d.predicate_ = std::move(contains);
  d.collar_ = collar_constant;
  d.name_ = std::move(name);
  return d;
}

bool Domain::contains(const Eigen::VectorXd& x) const {
  if (x.size() != n_) throw std::invalid_argument("point dimension does not match the domain");
  switch (kind_) {
    case DomainKind::Disk:
    case DomainKind::Ball: return x.squaredNorm() < radius_ * radius_;
    case DomainKind::Annulus: {
      const double r2 = x.squaredNorm();
      return r2 > inner_ * inner_ && r2 < radius_ * radius_;
    }
    case DomainKind::Box: return (x.cwiseAbs().array() < half_widths_.array()).all();
    case DomainKind::Indicator: return predicate_(x);
  }
  return false;
}

std::pair<double, double> Domain::ray_interval(const Eigen::VectorXd& theta) const {
  switch (kind_) {
    case DomainKind::Disk:
    case DomainKind::Ball: return {0.0, radius_};
    case DomainKind::Annulus: return {inner_, radius_};
    case DomainKind::Box: {
      double r = std::numeric_limits<double>::infinity();
      for (int i = 0; i < n_; ++i)
        if (theta(i) != 0.0) r = std::min(r, half_widths_(i) / std::abs(theta(i)));
      return {0.0, r};
    }
    case DomainKind::Indicator: {
      if (!predicate_(Eigen::VectorXd::Zero(n_))) return {0.0, 0.0};
      double lo = 0.0, hi = bounding_radius();
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (predicate_(mid * theta) ? lo : hi) = mid;
      }
      return {0.0, lo};
    }
  }
  return {0.0, 0.0};
}

double Domain::volume() const {
  switch (kind_) {
    case DomainKind::Disk:
    case DomainKind::Ball: return unit_ball_volume(n_) * std::pow(radius_, n_);
    case DomainKind::Annulus: return std::numbers::pi * (radius_ * radius_ - inner_ * inner_);
    case DomainKind::Box: return (2.0 * half_widths_).prod();
    case DomainKind::Indicator: {
      // Deterministic Monte Carlo; indicator domains carry no closed form.
      const long n_samples = 200000;
      long hits = 0;
      Eigen::VectorXd x(n_);
      for (long s = 0; s < n_samples; ++s) {
        Stream rng(0x766f6c, static_cast<std::uint64_t>(s));
        for (int i = 0; i < n_; ++i) x(i) = rng.uniform(-half_widths_(i), half_widths_(i));
        hits += predicate_(x);
      }
      return (2.0 * half_widths_).prod() * static_cast<double>(hits) / n_samples;
    }
  }
  return 0.0;
}

bool Domain::origin_on_boundary() const {
  if (kind_ != DomainKind::Indicator) return false;
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n_);
  const bool inside = predicate_(zero);
  const double eps = 1e-9 * bounding_radius();
  for (int i = 0; i < n_; ++i)
    for (double sign : {-1.0, 1.0})
      if (predicate_(sign * eps * Eigen::VectorXd::Unit(n_, i)) != inside) return true;
  return false;
}

std::string Domain::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case DomainKind::Disk: os << "Disk(radius=" << radius_ << ")"; break;
    case DomainKind::Annulus: os << "Annulus(r_in=" << inner_ << ", r_out=" << radius_ << ")"; break;
    case DomainKind::Ball: os << "Ball(n=" << n_ << ", radius=" << radius_ << ")"; break;
    case DomainKind::Box: os << "Box(half_widths=" << half_widths_.transpose() << ")"; break;
    case DomainKind::Indicator: os << "Indicator(" << name_ << ")"; break;
  }
  return os.str();
}

double invariance_residual(const Domain& domain, const GroupAction& action, long n_samples, std::uint64_t seed) {
  if (domain.dim() != action.ambient_dim()) throw std::invalid_argument("domain and group dimensions differ");
  long changed = 0;
  const Eigen::VectorXd hw = 1.5 * domain.half_widths();
  Eigen::VectorXd x(domain.dim());
  for (long s = 0; s < n_samples; ++s) {
    Stream rng(seed, static_cast<std::uint64_t>(s));
    for (int i = 0; i < domain.dim(); ++i) x(i) = rng.uniform(-hw(i), hw(i));
    const Eigen::MatrixXd k = action.random_element(rng);
    changed += domain.contains(x) != domain.contains(k * x);
  }
  return n_samples > 0 ? static_cast<double>(changed) / n_samples : 0.0;
}

}  // namespace redweyl
