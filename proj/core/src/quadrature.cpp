#include "redweyl/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace redweyl {

namespace {

// (P_n(t), P_n'(t)) by the three-term recurrence.
std::pair<double, double> legendre(int n, double t) {
  double p_prev = 1.0, p = t;
  for (int k = 2; k <= n; ++k) {
    const double next = ((2.0 * k - 1.0) * t * p - (k - 1.0) * p_prev) / k;
    p_prev = p;
    p = next;
  }
  return {p, n * (t * p - p_prev) / (t * t - 1.0)};
}

}  // namespace

Rule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  if (n == 1) {
    rule.nodes[0] = mid;
    rule.weights[0] = 2.0 * half;
    return rule;
  }
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(n, t);
      const double dt = p / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    const double dp = legendre(n, t).second;
    const double w = 2.0 / ((1.0 - t * t) * dp * dp);
    rule.nodes[i] = mid - half * t;
    rule.nodes[n - 1 - i] = mid + half * t;
    rule.weights[i] = rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

Rule periodic_trapezoid(int n, double a, double b, double shift) {
  if (n < 1) throw std::invalid_argument("periodic_trapezoid: n must be positive");
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.assign(n, (b - a) / n);
  for (int k = 0; k < n; ++k) rule.nodes[k] = a + (k + shift) * (b - a) / n;
  return rule;
}

}  // namespace redweyl
