#include "redweyl/oscillatory.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "redweyl/parallel.hpp"
#include "redweyl/quadrature.hpp"
#include "redweyl/zero_level.hpp"

namespace redweyl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double bump(double t) { return std::abs(t) < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0; }

void require_planar(const GroupAction& action, const IrrepLabel& chi) {
  if (action.kind() != GroupKind::PlanarSO2 || action.ambient_dim() != 2)
    throw std::invalid_argument("oscillatory integrals are implemented for planar SO(2) on R^2 only");
  if (chi.kind != GroupKind::PlanarSO2) throw std::invalid_argument("character does not belong to SO(2)");
}

int nodes_for(double wavelengths, double per_wavelength) {
  const double n = std::max(4.0 * per_wavelength, std::ceil(per_wavelength * wavelengths));
  return static_cast<int>(n);
}

}  // namespace

double AmplitudeSpec::radial_x(double r) const { return bump(r / x_radius); }

double AmplitudeSpec::radial_xi(double rho) const {
  return bump((2.0 * rho - xi_inner - xi_outer) / (xi_outer - xi_inner));
}

double AmplitudeSpec::operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& xi) const {
  return radial_x(x.norm()) * radial_xi(xi.norm()) * (1.0 + skew * x.dot(xi));
}

void AmplitudeSpec::validate() const {
  if (!(x_radius > 0.0)) throw std::invalid_argument("amplitude x_radius must be positive");
  if (!(xi_inner > 0.0 && xi_outer > xi_inner))
    throw std::invalid_argument("amplitude needs 0 < xi_inner < xi_outer");
  if (!std::isfinite(skew)) throw std::invalid_argument("amplitude skew must be finite");
}

std::complex<double> eval_I(const GroupAction& action, const IrrepLabel& chi, const AmplitudeSpec& amp, double mu,
                            const OscillatoryOptions& options) {
  require_planar(action, chi);
  amp.validate();
  if (!(options.points_per_wavelength >= kMinPointsPerWavelength))
    throw std::invalid_argument("at least 10 quadrature points per wavelength are required");
  if (!(mu >= kMinMu && mu <= kMaxMu)) throw std::invalid_argument("mu must lie in [0.02, 1]");

  // Write x = r e(alpha), xi = rho e(alpha + phi) and k = rotation by theta.
  // The phase <x - kx, xi> = r rho [(1 - cos theta) cos phi - sin theta sin phi]
  // does not involve alpha, which integrates to 2 pi.
  const double p = options.points_per_wavelength;
  const double phase_max = 2.0 * amp.x_radius * amp.xi_outer / mu;  // bound on |phase| / mu
  const int n_angle = nodes_for(2.0 * phase_max / kTwoPi, p);
  const int n_radial = nodes_for(phase_max / kTwoPi, p);

  const Rule rr = gauss_legendre(n_radial, 0.0, amp.x_radius);
  const Rule rp = gauss_legendre(n_radial, amp.xi_inner, amp.xi_outer);
  const std::size_t nij = rr.size() * rp.size();
  std::vector<double> t(nij), w(nij);
  for (std::size_t i = 0; i < rr.size(); ++i)
    for (std::size_t j = 0; j < rp.size(); ++j) {
      const std::size_t ij = i * rp.size() + j;
      t[ij] = rr.nodes[i] * rp.nodes[j];
      w[ij] = rr.weights[i] * rr.nodes[i] * amp.radial_x(rr.nodes[i]) * rp.weights[j] * rp.nodes[j] *
              amp.radial_xi(rp.nodes[j]);
    }
  const Rule rphi = periodic_trapezoid(n_angle, 0.0, kTwoPi);

  auto relative_angle_sum = [&](double cos_th, double sin_th) {
    std::complex<double> acc = 0.0;
    for (std::size_t f = 0; f < rphi.size(); ++f) {
      const double cphi = std::cos(rphi.nodes[f]);
      const double sphi = std::sin(rphi.nodes[f]);
      const double c = ((1.0 - cos_th) * cphi - sin_th * sphi) / mu;
      double re = 0.0, im = 0.0;
      for (std::size_t ij = 0; ij < nij; ++ij) {
        const double a = w[ij] * (1.0 + amp.skew * t[ij] * cphi);
        const double arg = t[ij] * c;
        re += a * std::cos(arg);
        im += a * std::sin(arg);
      }
      acc += rphi.weights[f] * std::complex<double>(re, im);
    }
    return acc;
  };

  if (options.identity_only) return relative_angle_sum(1.0, 0.0) / kTwoPi;

  const Rule rth = periodic_trapezoid(n_angle, 0.0, kTwoPi);
  std::vector<std::complex<double>> partial(rth.size());
  for_each_block(rth.size(), [&](std::size_t k) {
    const double th = rth.nodes[k];
    partial[k] = rth.weights[k] * std::polar(1.0, -chi.index * th) * relative_angle_sum(std::cos(th), std::sin(th));
  });
  std::complex<double> total = 0.0;
  for (const auto& v : partial) total += v;
  return total / (kTwoPi * kTwoPi);
}

double leading_term(const GroupAction& action, const IrrepLabel& chi, const AmplitudeSpec& amp,
                    const QuadratureGrid& grid) {
  require_planar(action, chi);
  amp.validate();
  const RegularChart chart(action, amp.x_radius, amp.xi_outer);
  ZeroLevelIntegrand f;
  f.r_interval = [&](const Eigen::VectorXd&) { return std::pair{0.0, amp.x_radius}; };
  f.s_intervals = [&](const Eigen::VectorXd&, const Eigen::VectorXd&) {
    return std::vector<std::pair<double, double>>{{-amp.xi_outer, -amp.xi_inner}, {amp.xi_inner, amp.xi_outer}};
  };
  f.weight = [&](const PhasePoint& z) { return amp(z.x, z.xi); };
  const int n = action.ambient_dim();
  return branching_multiplicity(action, chi) / std::pow(kTwoPi, n) * integrate_zero_level(chart, f, grid);
}

std::vector<ConvergenceRow> convergence_report(const GroupAction& action, const IrrepLabel& chi,
                                               const AmplitudeSpec& amp, const std::vector<double>& mus,
                                               const OscillatoryOptions& options) {
  for (std::size_t i = 1; i < mus.size(); ++i)
    if (!(mus[i] < mus[i - 1])) throw std::invalid_argument("mu list must be strictly descending");
  const int kappa = principal_orbit_data(action).kappa;
  const double l0 = leading_term(action, chi, amp);
  std::vector<ConvergenceRow> rows;
  for (double mu : mus) {
    ConvergenceRow row{mu, eval_I(action, chi, amp, mu, options), l0, 0.0,
                       std::numeric_limits<double>::quiet_NaN()};
    row.abs_error = std::abs(row.integral / std::pow(kTwoPi * mu, kappa) - l0);
    if (!rows.empty())
      row.empirical_order = std::log(row.abs_error / rows.back().abs_error) / std::log(mu / rows.back().mu);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace redweyl
