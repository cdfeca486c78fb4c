#include "redweyl/reduced_volume.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "redweyl/domain.hpp"
#include "redweyl/error.hpp"
#include "redweyl/parallel.hpp"
#include "redweyl/quadrature.hpp"
#include "redweyl/random.hpp"
#include "redweyl/spherical.hpp"
#include "redweyl/symbols.hpp"
#include "redweyl/zero_level.hpp"

namespace redweyl {

namespace {

constexpr long kBlockSize = 4096;

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
};

template <class Draw>
MCEstimate run_blocks(long n_samples, std::uint64_t seed, Draw&& draw) {
  if (n_samples < 2) throw std::invalid_argument("Monte Carlo needs at least two samples");
  const std::size_t nblocks = static_cast<std::size_t>((n_samples + kBlockSize - 1) / kBlockSize);
  std::vector<Moments> blocks(nblocks);
  for_each_block(nblocks, [&](std::size_t b) {
    const long begin = static_cast<long>(b) * kBlockSize;
    const long end = std::min(n_samples, begin + kBlockSize);
    Moments m;
    for (long i = begin; i < end; ++i) {
      const double w = draw(static_cast<std::uint64_t>(i));
      m.sum += w;
      m.sum_sq += w * w;
    }
    blocks[b] = m;
  });
  Moments total;
  for (const auto& m : blocks) {
    total.sum += m.sum;
    total.sum_sq += m.sum_sq;
  }
  MCEstimate est;
  est.n_samples = n_samples;
  est.seed = seed;
  est.value = total.sum / n_samples;
  const double var = std::max(0.0, (total.sum_sq - n_samples * est.value * est.value) / (n_samples - 1));
  est.std_error = std::sqrt(var / n_samples);
  est.low_confidence = est.value > 0.0 ? est.std_error / est.value > kLowConfidenceRatio : est.std_error > 0.0;
  return est;
}

MCEstimate zero_estimate(long n_samples, std::uint64_t seed) {
  MCEstimate est;
  est.n_samples = n_samples;
  est.seed = seed;
  return est;
}

Rule rescaled(const Rule& unit, double a, double b) {
  Rule out = unit;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.nodes[i] = a + (b - a) * unit.nodes[i];
    out.weights[i] = (b - a) * unit.weights[i];
  }
  return out;
}

// Rule for angle slot a of a chart or sphere parametrization.
Rule angle_rule(bool azimuth, int nodes) {
  return azimuth ? periodic_trapezoid(nodes, 0.0, 2.0 * std::numbers::pi)
                 : gauss_legendre(nodes, 0.0, std::numbers::pi);
}

// Calls body(angles, weight) over the tensor grid of the given rules.
template <class Body>
void for_each_angle(const std::vector<Rule>& rules, Body&& body) {
  const std::size_t k = rules.size();
  std::vector<std::size_t> idx(k, 0);
  std::vector<double> angles(k);
  while (true) {
    double w = 1.0;
    for (std::size_t c = 0; c < k; ++c) {
      angles[c] = rules[c].nodes[idx[c]];
      w *= rules[c].weights[idx[c]];
    }
    body(angles.data(), w);
    std::size_t c = 0;
    while (c < k && ++idx[c] == rules[c].size()) idx[c++] = 0;
    if (c == k) break;
  }
}

// Surface measure on S^{k-1} in hyperspherical coordinates.
double sphere_jacobian(const double* angles, int k) {
  double j = 1.0;
  for (int i = 0; i + 2 < k; ++i) j *= std::pow(std::sin(angles[i]), k - 2 - i);
  return j;
}

// vol{xi : a(x, xi) <= level} = (1/n) int_{S^{n-1}} b(x, eta)^n deta, with b
// the homogeneity bound.
double momentum_volume(const Symbol& symbol, const Eigen::VectorXd& x, double level, int angular) {
  const int n = static_cast<int>(x.size());
  if (symbol.kind() == SymbolKind::EuclideanPower)
    return unit_ball_volume(n) * std::pow(std::max(level, 0.0), static_cast<double>(n) / symbol.order());
  std::vector<Rule> rules;
  for (int a = 0; a < n - 1; ++a) rules.push_back(angle_rule(a == n - 2, angular));
  double total = 0.0;
  if (n == 1) {
    const Eigen::VectorXd e = Eigen::VectorXd::Ones(1);
    return symbol.momentum_bound(x, e, level) + symbol.momentum_bound(x, -e, level);
  }
  for_each_angle(rules, [&](const double* ang, double w) {
    const Eigen::VectorXd eta = sphere_point(ang, n);
    total += w * sphere_jacobian(ang, n) * std::pow(symbol.momentum_bound(x, eta, level), n);
  });
  return total / n;
}

double finite_quadrature(const GroupAction& action, const Symbol& symbol, const Domain& domain, double level,
                         const QuadratureGrid& grid) {
  const int n = domain.dim();
  double total = 0.0;
  if (domain.kind() == DomainKind::Box) {
    std::vector<Rule> rules;
    for (int i = 0; i < n; ++i)
      rules.push_back(gauss_legendre(grid.radial, -domain.half_widths()(i), domain.half_widths()(i)));
    std::vector<std::size_t> idx(n, 0);
    Eigen::VectorXd x(n);
    while (true) {
      double w = 1.0;
      for (int i = 0; i < n; ++i) {
        x(i) = rules[i].nodes[idx[i]];
        w *= rules[i].weights[idx[i]];
      }
      total += w * momentum_volume(symbol, x, level, grid.angular);
      int c = 0;
      while (c < n && ++idx[c] == rules[c].size()) idx[c++] = 0;
      if (c == n) break;
    }
  } else {
    std::vector<Rule> rules;
    for (int a = 0; a < n - 1; ++a) rules.push_back(angle_rule(a == n - 2, grid.angular));
    for_each_angle(rules, [&](const double* ang, double wa) {
      const Eigen::VectorXd theta = sphere_point(ang, n);
      const auto [lo, hi] = domain.ray_interval(theta);
      if (!(hi > lo)) return;
      const Rule rr = gauss_legendre(grid.radial, lo, hi);
      for (std::size_t i = 0; i < rr.size(); ++i)
        total += wa * sphere_jacobian(ang, n) * rr.weights[i] * std::pow(rr.nodes[i], n - 1) *
                 momentum_volume(symbol, rr.nodes[i] * theta, level, grid.angular);
    });
  }
  return total / action.order();
}

double quadrature_value(const GroupAction& action, const Symbol& symbol, const Domain& domain, double level,
                        const QuadratureGrid& grid) {
  if (level <= 0.0) return 0.0;
  if (action.is_finite()) return finite_quadrature(action, symbol, domain, level, grid);
  const ChartBounds b = chart_bounds(domain, symbol, level);
  const RegularChart chart(action, b.r_max, b.s_max);
  ZeroLevelIntegrand f;
  f.r_interval = [&](const Eigen::VectorXd& theta) { return domain.ray_interval(theta); };
  f.s_intervals = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& eta) {
    const double up = symbol.momentum_bound(x, eta, level);
    const double down = symbol.momentum_bound(x, -eta, level);
    if (!std::isfinite(up) || !std::isfinite(down))
      throw AssumptionViolation(Assumption::Ellipticity, "unbounded sublevel set");
    return std::vector<std::pair<double, double>>{{-down, up}};
  };
  return integrate_zero_level(chart, f, grid);
}

}  // namespace

MCEstimate reduced_volume_mc(const GroupAction& action, const Symbol& symbol, const Domain& domain, double level,
                             long n_samples, std::uint64_t seed, std::optional<double> momentum_bound) {
  if (domain.dim() != action.ambient_dim()) throw std::invalid_argument("domain and group dimensions differ");
  if (level <= 0.0) return zero_estimate(n_samples, seed);
  ChartBounds b = chart_bounds(domain, symbol, level);
  if (momentum_bound) {
    if (!(*momentum_bound > 0.0)) throw std::invalid_argument("momentum bound must be positive");
    b.s_max = *momentum_bound;
  }
  const int n = domain.dim();

  if (action.is_finite()) {
    const Eigen::VectorXd hw = domain.half_widths();
    const double box = (2.0 * hw).prod() * std::pow(2.0 * b.s_max, n) / action.order();
    return run_blocks(n_samples, seed, [&](std::uint64_t i) {
      Stream rng(seed, i);
      Eigen::VectorXd x(n), xi(n);
      for (int c = 0; c < n; ++c) x(c) = rng.uniform(-hw(c), hw(c));
      for (int c = 0; c < n; ++c) xi(c) = rng.uniform(-b.s_max, b.s_max);
      return domain.contains(x) && symbol(x, xi) <= level ? box : 0.0;
    });
  }

  const RegularChart chart(action, b.r_max, b.s_max);
  return run_blocks(n_samples, seed, [&](std::uint64_t i) {
    return draw_regular_sample(chart, domain, symbol, level, seed, i).weight;
  });
}

QuadratureGrid QuadratureGrid::halved() const {
  return {std::max(2, radial / 2), std::max(2, momentum / 2), std::max(2, angular / 2)};
}

QuadratureEstimate reduced_volume_quadrature(const GroupAction& action, const Symbol& symbol, const Domain& domain,
                                             double level, const QuadratureGrid& grid) {
  if (grid.radial < 1 || grid.momentum < 1 || grid.angular < 1)
    throw std::invalid_argument("quadrature grid sizes must be positive");
  if (domain.dim() != action.ambient_dim()) throw std::invalid_argument("domain and group dimensions differ");
  QuadratureEstimate q;
  q.value = quadrature_value(action, symbol, domain, level, grid);
  q.coarse_value = quadrature_value(action, symbol, domain, level, grid.halved());
  q.error_estimate = std::abs(q.value - q.coarse_value);
  if (q.value > 0.0 && q.coarse_value > 0.0)
    q.richardson_ratio = std::max(q.value / q.coarse_value, q.coarse_value / q.value);
  else
    q.richardson_ratio = q.value == q.coarse_value ? 1.0 : std::numeric_limits<double>::infinity();
  q.too_coarse = q.richardson_ratio > kRichardsonLimit;
  return q;
}

double integrate_zero_level(const RegularChart& chart, const ZeroLevelIntegrand& f, const QuadratureGrid& grid) {
  const int ne = chart.num_eta_angles();
  const int na = chart.dimension() - 2;
  std::vector<Rule> rules;
  for (int a = 0; a < na; ++a) rules.push_back(angle_rule(chart.is_azimuth(a), grid.angular));
  const GroupAction& action = chart.action();
  const bool signed_s = chart.signed_momentum();
  // Reference rules on [0, 1], rescaled per interval.
  const Rule unit_r = gauss_legendre(grid.radial, 0.0, 1.0);
  const Rule unit_s = gauss_legendre(grid.momentum, 0.0, 1.0);

  // Parallelize over the first angle's nodes; the merge is in node order.
  const Rule first = rules.front();
  std::vector<Rule> rest(rules.begin() + 1, rules.end());
  std::vector<double> partial(first.size(), 0.0);
  for_each_block(first.size(), [&](std::size_t i0) {
    double acc = 0.0;
    auto body = [&](const double* tail, double w_tail) {
      std::vector<double> ang(na);
      ang[0] = first.nodes[i0];
      for (int a = 1; a < na; ++a) ang[a] = tail[a - 1];
      const double w_ang = first.weights[i0] * w_tail;
      const Eigen::VectorXd eta = chart.eta(ang.data());
      const Eigen::VectorXd theta = chart.theta(ang.data(), ang.data() + ne);
      const auto [r_lo_raw, r_hi] = f.r_interval(theta);
      const double r_lo = std::max(0.0, r_lo_raw);
      if (!(r_hi > r_lo)) return;
      const RegularChart::AngularGram g = chart.angular_gram(ang.data());
      const Rule rr = rescaled(unit_r, r_lo, r_hi);
      PhasePoint z{Eigen::VectorXd(theta.size()), Eigen::VectorXd(eta.size())};
      for (std::size_t ir = 0; ir < rr.size(); ++ir) {
        const double r = rr.nodes[ir];
        const Eigen::VectorXd x = r * theta;
        z.x = x;
        for (auto [s_lo, s_hi] : f.s_intervals(x, eta)) {
          if (!signed_s) s_lo = std::max(s_lo, 0.0);
          if (!(s_hi > s_lo)) continue;
          const Rule rs = rescaled(unit_s, s_lo, s_hi);
          for (std::size_t is = 0; is < rs.size(); ++is) {
            const double s = rs.nodes[is];
            z.xi = s * eta;
            const double ov = zero_level_orbit_volume(action, z);
            if (!(ov > 0.0)) continue;
            const double weight = f.weight ? f.weight(z) : 1.0;
            acc += w_ang * rr.weights[ir] * rs.weights[is] * RegularChart::density(g, r, s) / ov * weight;
          }
        }
      }
    };
    if (rest.empty()) {
      body(nullptr, 1.0);
    } else {
      for_each_angle(rest, body);
    }
    partial[i0] = acc;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

double analytic_oracle(std::string_view case_id) {
  if (case_id == "disk_so2_laplacian") return 2.0;
  if (case_id == "ball_so3_laplacian") return 2.0;
  if (case_id == "ball_cyl_so2_laplacian") return std::numbers::pi * std::numbers::pi / 2.0;
  throw std::invalid_argument("unknown analytic oracle case: " + std::string(case_id));
}

std::vector<std::string_view> analytic_oracle_cases() {
  return {"disk_so2_laplacian", "ball_so3_laplacian", "ball_cyl_so2_laplacian"};
}

}  // namespace redweyl
