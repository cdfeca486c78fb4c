#pragma once

#include <Eigen/Dense>

namespace redweyl {

// Hyperspherical coordinates on S^{k-1} with k-1 angles: all but the last are
// polar angles in [0, pi], the last is an azimuth in [0, 2 pi) that rotates
// the final coordinate pair. For k = 1 there are no angles and the point is +1.
Eigen::VectorXd sphere_point(const double* angles, int k);

// Surface area of the unit sphere S^{k-1} in R^k.
double sphere_area(int k);

// Volume of the unit ball in R^k.
double unit_ball_volume(int k);

}  // namespace redweyl
