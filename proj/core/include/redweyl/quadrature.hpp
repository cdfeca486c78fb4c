#pragma once

#include <vector>

namespace redweyl {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

// n-point Gauss-Legendre rule on [a, b]; exact for polynomials of degree 2n-1.
Rule gauss_legendre(int n, double a, double b);

// n equispaced nodes a + (k + shift) (b - a) / n with equal weights. Exact for
// trigonometric polynomials of degree < n on a period.
Rule periodic_trapezoid(int n, double a, double b, double shift = 0.0);

}  // namespace redweyl
