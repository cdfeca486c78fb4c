#include "redweyl/spherical.hpp"

#include <cmath>
#include <numbers>

namespace redweyl {

Eigen::VectorXd sphere_point(const double* angles, int k) {
  Eigen::VectorXd v(k);
  double sin_prod = 1.0;
  for (int i = 0; i + 1 < k; ++i) {
    v(i) = sin_prod * std::cos(angles[i]);
    sin_prod *= std::sin(angles[i]);
  }
  v(k - 1) = sin_prod;
  return v;
}

double sphere_area(int k) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k);
}

double unit_ball_volume(int k) { return sphere_area(k) / k; }

}  // namespace redweyl
