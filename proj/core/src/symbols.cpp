#include "redweyl/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "redweyl/domain.hpp"
#include "redweyl/group_action.hpp"
#include "redweyl/random.hpp"

namespace redweyl {

namespace {

void check_order(int order) {
  if (order < 2 || order % 2 != 0) throw std::invalid_argument("symbol order must be a positive even integer");
}

double power_of_norm_sq(double norm_sq, int order) {
  return order == 2 ? norm_sq : std::pow(norm_sq, 0.5 * order);
}

Eigen::VectorXd random_unit(Stream& rng, int n) {
  Eigen::VectorXd v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = rng.normal();
  } while (v.norm() == 0.0);
  return v.normalized();
}

// Uniform point of the domain by rejection from its bounding box.
Eigen::VectorXd random_point(Stream& rng, const Domain& domain) {
  const auto& hw = domain.half_widths();
  Eigen::VectorXd x(domain.dim());
  for (int attempt = 0; attempt < 10000; ++attempt) {
    for (int i = 0; i < domain.dim(); ++i) x(i) = rng.uniform(-hw(i), hw(i));
    if (domain.contains(x)) return x;
  }
  throw std::invalid_argument("domain has negligible volume in its bounding box");
}

}  // namespace

Symbol Symbol::euclidean_power(int order) {
  check_order(order);
  Symbol s;
  s.kind_ = SymbolKind::EuclideanPower;
  s.order_ = order;
  s.name_ = "euclidean_power";
  return s;
}

Symbol Symbol::invariant_quadratic(Eigen::MatrixXd q) {
  if (q.rows() != q.cols() || q.rows() == 0) throw std::invalid_argument("quadratic symbol needs a square matrix");
  if ((q - q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, q.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("quadratic symbol matrix must be symmetric");
  Symbol s;
  s.kind_ = SymbolKind::InvariantQuadratic;
  s.order_ = 2;
  s.name_ = "invariant_quadratic";
  s.q_ = 0.5 * (q + q.transpose());
  return s;
}

Symbol Symbol::position_weighted(std::vector<double> weight_coefficients, int order) {
  check_order(order);
  if (weight_coefficients.empty()) throw std::invalid_argument("position weight needs coefficients");
  Symbol s;
  s.kind_ = SymbolKind::PositionWeighted;
  s.order_ = order;
  s.name_ = "position_weighted";
  s.weight_ = std::move(weight_coefficients);
  return s;
}

Symbol Symbol::custom(Evaluator f, int order, std::string name) {
  check_order(order);
  if (!f) throw std::invalid_argument("custom symbol needs an evaluator");
  Symbol s;
  s.kind_ = SymbolKind::Custom;
  s.order_ = order;
  s.name_ = std::move(name);
  s.custom_ = std::move(f);
  return s;
}

double Symbol::operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& xi) const {
  switch (kind_) {
    case SymbolKind::EuclideanPower: return power_of_norm_sq(xi.squaredNorm(), order_);
    case SymbolKind::InvariantQuadratic:
      if (q_.rows() != xi.size()) throw std::invalid_argument("quadratic symbol dimension mismatch");
      return xi.dot(q_ * xi);
    case SymbolKind::PositionWeighted: {
      const double r = x.norm();
      double w = 0.0;
      for (auto it = weight_.rbegin(); it != weight_.rend(); ++it) w = w * r + *it;
      return w * power_of_norm_sq(xi.squaredNorm(), order_);
    }
    case SymbolKind::Custom: return custom_(x, xi);
  }
  return 0.0;
}

double Symbol::momentum_bound(const Eigen::VectorXd& x, const Eigen::VectorXd& eta, double level) const {
  if (level <= 0.0) return 0.0;
  const double a = (*this)(x, eta);
  if (a <= 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(level / a, 1.0 / order_);
}

double ellipticity_margin(const Symbol& symbol, const Domain& domain, long n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("ellipticity_margin: n_samples must be >= 1");
  double margin = std::numeric_limits<double>::infinity();
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(domain.dim());
  if (domain.contains(origin)) {
    Stream rng(seed, ~0ULL);
    for (int i = 0; i < 16; ++i) margin = std::min(margin, symbol(origin, random_unit(rng, domain.dim())));
  }
  for (long s = 0; s < n_samples; ++s) {
    Stream rng(seed, static_cast<std::uint64_t>(s));
    const Eigen::VectorXd x = random_point(rng, domain);
    margin = std::min(margin, symbol(x, random_unit(rng, domain.dim())));
  }
  return margin;
}

double invariance_residual(const Symbol& symbol, const GroupAction& action, long n_samples, std::uint64_t seed) {
  const int n = action.ambient_dim();
  double worst = 0.0;
  for (long s = 0; s < n_samples; ++s) {
    Stream rng(seed, static_cast<std::uint64_t>(s));
    Eigen::VectorXd x(n), xi(n);
    for (int i = 0; i < n; ++i) x(i) = rng.normal();
    xi = random_unit(rng, n);
    const Eigen::MatrixXd k = action.random_element(rng);
    worst = std::max(worst, std::abs(symbol(k * x, k * xi) - symbol(x, xi)));
  }
  return worst;
}

double homogeneity_residual(const Symbol& symbol, int n, long n_samples, std::uint64_t seed) {
  double worst = 0.0;
  for (long s = 0; s < n_samples; ++s) {
    Stream rng(seed, static_cast<std::uint64_t>(s));
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = rng.normal();
    const Eigen::VectorXd xi = random_unit(rng, n);
    const double base = symbol(x, xi);
    for (double t : {0.5, 2.0, 10.0}) {
      const double expect = std::pow(t, symbol.order()) * base;
      worst = std::max(worst, std::abs(symbol(x, t * xi) - expect) / std::max(std::abs(expect), 1e-300));
    }
  }
  return worst;
}

}  // namespace redweyl
