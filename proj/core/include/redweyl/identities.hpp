#pragma once

#include <Eigen/Dense>

#include "redweyl/group_action.hpp"

namespace redweyl {

// max over generator pairs of |<A_i x, A_j xi> - <A_j x, A_i xi>|. The
// identity holds on Omega_0; off it the value is generally positive, and no
// membership check is made so that this can be demonstrated.
double symmetry_identity_residual(const GroupAction& action, const PhasePoint& z);

struct HessianIdentity {
  int kappa = 0;
  double d_det = 1.0;       // determinant of the 2 kappa x 2 kappa block matrix
  double lambda_det = 1.0;  // det of ((k-1)(k^{-1}-1) + f) restricted to g z
  double uv_a = 0.0;        // |U^T U + V^T V - I|
  double uv_b = 0.0;        // |U^T V - V^T U|
  double uv_d = 0.0;        // |(k-1)(U V^T - V U^T)|
  double uv_e = 0.0;        // |(k-1)(U U^T + V V^T) - (k-1)|
  double max_uv() const;
};

// Builds B_1..B_kappa in the Lie algebra with (B_j z) orthonormal, then
// evaluates the transversal Hessian factorization at the fixed point (z, k).
// Throws std::invalid_argument when |kz - z| > 1e-10.
HessianIdentity hessian_identity_check(const GroupAction& action, const PhasePoint& z,
                                       const Eigen::MatrixXd& k);

}  // namespace redweyl
