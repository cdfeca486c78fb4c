#include "redweyl/zero_level.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "redweyl/domain.hpp"
#include "redweyl/error.hpp"
#include "redweyl/random.hpp"
#include "redweyl/spherical.hpp"
#include "redweyl/symbols.hpp"

namespace redweyl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

RegularChart::RegularChart(const GroupAction& action, double r_max, double s_max)
    : action_(&action), n_(action.ambient_dim()) {
  if (action.is_finite()) throw std::invalid_argument("regular charts need a continuous group");
  if (!singular_subspace(action).satisfied)
    throw AssumptionViolation(Assumption::Assumption1, "no strict subspace contains the singular set");
  if (!(r_max > 0.0) || !(s_max > 0.0) || !std::isfinite(r_max) || !std::isfinite(s_max))
    throw std::invalid_argument("chart bounds must be positive and finite");
  kappa_ = principal_orbit_data(action).kappa;

  std::vector<int> moved;
  if (action.kind() == GroupKind::PlanarSO2) {
    moved = {action.plane().first, action.plane().second};
  } else {
    moved = {0, 1, 2};
  }
  for (int k = 0; k < n_; ++k)
    if (std::find(moved.begin(), moved.end(), k) == moved.end()) perm_.push_back(k);
  perm_.insert(perm_.end(), moved.begin(), moved.end());

  const int dim = dimension();
  lower_ = Eigen::VectorXd::Zero(dim);
  upper_ = Eigen::VectorXd::Zero(dim);
  upper_(0) = r_max;
  upper_(1) = s_max;
  if (signed_momentum()) lower_(1) = -s_max;
  for (int a = 0; a < dim - 2; ++a) upper_(2 + a) = is_azimuth(a) ? kTwoPi : std::numbers::pi;
}

double RegularChart::box_volume() const { return (upper_ - lower_).prod(); }

bool RegularChart::is_azimuth(int a) const {
  if (a < num_eta_angles()) return a == num_eta_angles() - 1;
  return a - num_eta_angles() == num_omega_angles() - 1;
}

Eigen::VectorXd RegularChart::eta(const double* eta_angles) const {
  const Eigen::VectorXd v = sphere_point(eta_angles, n_);
  Eigen::VectorXd e(n_);
  for (int k = 0; k < n_; ++k) e(perm_[k]) = v(k);
  return e;
}

Eigen::VectorXd RegularChart::theta(const double* eta_angles, const double* omega_angles) const {
  const Eigen::VectorXd e = eta(eta_angles);
  const int fiber = n_ - kappa_;
  const Eigen::VectorXd w = sphere_point(omega_angles, fiber);
  // Frame of (g eta)^perp: the fixed coordinates, then the unit radial vector
  // of eta inside the moved block.
  const int fixed = fiber - 1;
  Eigen::VectorXd t = Eigen::VectorXd::Zero(n_);
  for (int c = 0; c < fixed; ++c) t(perm_[c]) = w(c);
  double rho = 0.0;
  for (int k = fixed; k < n_; ++k) rho += e(perm_[k]) * e(perm_[k]);
  rho = std::sqrt(rho);
  if (rho > 0.0) {
    for (int k = fixed; k < n_; ++k) t(perm_[k]) = w(fiber - 1) * e(perm_[k]) / rho;
  } else {
    t(perm_[fixed]) = w(fiber - 1);
  }
  return t;
}

PhasePoint RegularChart::map(const Eigen::VectorXd& u) const {
  const double* ang = u.data() + 2;
  return {u(0) * theta(ang, ang + num_eta_angles()), u(1) * eta(ang)};
}

namespace {

// Central-difference step for an angle. Polar angles close to 0 or pi get a
// smaller step so that the stencil does not reach across the pole.
double step_for(bool azimuth, double angle) {
  if (azimuth) return kFiniteDifferenceStep;
  const double room = std::min(angle, std::numbers::pi - angle);
  return std::min(kFiniteDifferenceStep, 0.5 * std::max(room, 1e-12));
}

}  // namespace

RegularChart::AngularGram RegularChart::angular_gram(const double* angles) const {
  const int na = dimension() - 2;
  const int ne = num_eta_angles();
  Eigen::MatrixXd dtheta(n_, na), deta(n_, na);
  std::vector<double> a(angles, angles + na);
  for (int c = 0; c < na; ++c) {
    const double keep = a[c];
    const double h = step_for(is_azimuth(c), keep);
    a[c] = keep + h;
    const Eigen::VectorXd tp = theta(a.data(), a.data() + ne);
    const Eigen::VectorXd ep = eta(a.data());
    a[c] = keep - h;
    const Eigen::VectorXd tm = theta(a.data(), a.data() + ne);
    const Eigen::VectorXd em = eta(a.data());
    a[c] = keep;
    dtheta.col(c) = (tp - tm) / (2.0 * h);
    deta.col(c) = (ep - em) / (2.0 * h);
  }
  return {dtheta.transpose() * dtheta, deta.transpose() * deta};
}

double RegularChart::density(const AngularGram& g, double r, double s) {
  // Bounded-size storage: this runs in the innermost quadrature loops.
  using Small = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 8, 8>;
  if (g.theta.rows() > 8) return std::sqrt(std::max(0.0, (r * r * g.theta + s * s * g.eta).determinant()));
  const Small m = r * r * g.theta + s * s * g.eta;
  double det = 0.0;
  switch (m.rows()) {
    case 1: det = m(0, 0); break;
    case 2: det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); break;
    case 3: det = Eigen::Matrix3d(m).determinant(); break;
    default: det = m.determinant(); break;
  }
  return std::sqrt(std::max(0.0, det));
}

double RegularChart::density(const Eigen::VectorXd& u) const {
  return density(angular_gram(u.data() + 2), u(0), u(1));
}

double RegularChart::full_gram_density(const Eigen::VectorXd& u) const {
  const int dim = dimension();
  Eigen::MatrixXd jac(2 * n_, dim);
  for (int c = 0; c < dim; ++c) {
    const double h = c < 2 ? kFiniteDifferenceStep : step_for(is_azimuth(c - 2), u(c));
    Eigen::VectorXd up = u, um = u;
    up(c) += h;
    um(c) -= h;
    jac.col(c) = (map(up).stacked() - map(um).stacked()) / (2.0 * h);
  }
  return std::sqrt(std::max(0.0, (jac.transpose() * jac).determinant()));
}

std::optional<double> RegularChart::closed_form_density(const Eigen::VectorXd& u) const {
  const double r = u(0), s = u(1);
  if (action_->kind() == GroupKind::PlanarSO2 && n_ == 2) return std::sqrt(r * r + s * s);
  if (action_->kind() == GroupKind::StandardSO3 && n_ == 3) return (r * r + s * s) * std::sin(u(2));
  if (action_->kind() == GroupKind::PlanarSO2 && n_ == 3) {
    // In-plane radii of x and xi are r |sin psi| and s sin phi_1.
    const double rx = r * std::sin(u(4)), rxi = s * std::sin(u(2));
    return r * std::abs(s) * std::sqrt(rx * rx + rxi * rxi);
  }
  return std::nullopt;
}

double zero_level_orbit_volume(const GroupAction& action, const PhasePoint& z) {
  if (action.kind() == GroupKind::PlanarSO2) {
    const auto [i, j] = action.plane();
    return kTwoPi * std::sqrt(z.x(i) * z.x(i) + z.x(j) * z.x(j) + z.xi(i) * z.xi(i) + z.xi(j) * z.xi(j));
  }
  if (action.kind() == GroupKind::StandardSO3)
    return 2.0 * kTwoPi * (z.x.head(3).squaredNorm() + z.xi.head(3).squaredNorm());
  throw std::invalid_argument("zero_level_orbit_volume needs a continuous group");
}

ChartBounds chart_bounds(const Domain& domain, const Symbol& symbol, double level) {
  double c0 = 0.0;
  switch (symbol.kind()) {
    case SymbolKind::EuclideanPower: c0 = 1.0; break;
    case SymbolKind::InvariantQuadratic: {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symbol.matrix(), Eigen::EigenvaluesOnly);
      c0 = es.eigenvalues().minCoeff();
      break;
    }
    default:
      // Sampled margins can only overestimate the infimum; shrink for safety.
      c0 = 0.9 * ellipticity_margin(symbol, domain, 4096, 0xc0);
      break;
  }
  if (!(c0 > 0.0)) throw AssumptionViolation(Assumption::Ellipticity, "ellipticity margin is not positive");
  return {domain.bounding_radius(), std::pow(std::max(level, 0.0) / c0, 1.0 / symbol.order())};
}

RegularSample draw_regular_sample(const RegularChart& chart, const Domain& domain, const Symbol& symbol,
                                  double level, std::uint64_t seed, std::uint64_t index) {
  Stream rng(seed, index);
  const int dim = chart.dimension();
  RegularSample out;
  out.chart_coords.resize(dim);
  do {
    for (int c = 0; c < dim; ++c) out.chart_coords(c) = rng.uniform(chart.lower()(c), chart.upper()(c));
  } while (out.chart_coords(0) < kMinRadius);
  out.point = chart.map(out.chart_coords);
  out.density = chart.density(out.chart_coords);
  out.orbit_volume = zero_level_orbit_volume(chart.action(), out.point);
  const bool inside = domain.contains(out.point.x) && symbol(out.point.x, out.point.xi) <= level;
  out.weight = inside && out.orbit_volume > 0.0 ? chart.box_volume() * out.density / out.orbit_volume : 0.0;
  return out;
}

std::vector<RegularSample> sample_regular_zero_level(const GroupAction& action, const Domain& domain,
                                                     const Symbol& symbol, double level, long n_samples,
                                                     std::uint64_t seed) {
  if (n_samples < 0) throw std::invalid_argument("n_samples must be >= 0");
  const ChartBounds b = chart_bounds(domain, symbol, level);
  if (!(b.s_max > 0.0)) throw std::invalid_argument("empty sublevel set: no momentum range to sample");
  const RegularChart chart(action, b.r_max, b.s_max);
  std::vector<RegularSample> out;
  out.reserve(static_cast<std::size_t>(n_samples));
  for (long i = 0; i < n_samples; ++i)
    out.push_back(draw_regular_sample(chart, domain, symbol, level, seed, static_cast<std::uint64_t>(i)));
  return out;
}

}  // namespace redweyl
