#include "redweyl/identities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace redweyl {

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

double HessianIdentity::max_uv() const { return std::max({uv_a, uv_b, uv_d, uv_e}); }

double symmetry_identity_residual(const GroupAction& action, const PhasePoint& z) {
  const auto& gens = action.lie().generators;
  double worst = 0.0;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const double lhs = (gens[i] * z.x).dot(gens[j] * z.xi);
      const double rhs = (gens[j] * z.x).dot(gens[i] * z.xi);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  return worst;
}

HessianIdentity hessian_identity_check(const GroupAction& action, const PhasePoint& z, const Eigen::MatrixXd& k) {
  const int n = action.ambient_dim();
  if (k.rows() != n || k.cols() != n) throw std::invalid_argument("group element has the wrong size");
  if (std::max((k * z.x - z.x).lpNorm<Eigen::Infinity>(), (k * z.xi - z.xi).lpNorm<Eigen::Infinity>()) > 1e-10)
    throw std::invalid_argument("hessian_identity_check needs k z = z");
  HessianIdentity out;
  if (action.is_finite()) return out;

  // Gram-Schmidt on the images A_i z, carrying the Lie algebra combinations.
  const auto& gens = action.lie().generators;
  std::vector<Eigen::VectorXd> images;
  double largest = 0.0;
  for (const auto& a : gens) {
    Eigen::VectorXd v(2 * n);
    v << a * z.x, a * z.xi;
    largest = std::max(largest, v.norm());
    images.push_back(v);
  }
  std::vector<Eigen::MatrixXd> b;
  std::vector<Eigen::VectorXd> bz;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Eigen::MatrixXd coeff = gens[i];
    Eigen::VectorXd w = images[i];
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t j = 0; j < b.size(); ++j) {
        const double c = bz[j].dot(w);
        w -= c * bz[j];
        coeff -= c * b[j];
      }
    const double norm = w.norm();
    if (norm > kRankThreshold * largest) {
      b.push_back(coeff / norm);
      bz.push_back(w / norm);
    }
  }
  const int kappa = static_cast<int>(b.size());
  out.kappa = kappa;
  if (kappa == 0) return out;

  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd kinv = k.transpose();
  Eigen::MatrixXd u(n, kappa), v(n, kappa);
  for (int j = 0; j < kappa; ++j) {
    u.col(j) = b[j] * z.x;
    v.col(j) = b[j] * z.xi;
  }

  Eigen::MatrixXd d(2 * kappa, 2 * kappa);
  for (int i = 0; i < kappa; ++i)
    for (int j = 0; j < kappa; ++j) {
      const double delta = i == j ? 1.0 : 0.0;
      d(i, j) = ((kinv - id) * u.col(j)).dot(u.col(i)) + delta;
      d(i, kappa + j) = ((k - id) * (kinv - id) * v.col(j)).dot(u.col(i));
      d(kappa + i, j) = -v.col(j).dot(u.col(i));
      d(kappa + i, kappa + j) = ((k - id) * u.col(j)).dot(u.col(i)) + delta;
    }
  out.d_det = d.determinant();

  // Lambda = ((k - 1)(k^{-1} - 1) + f) on g z, f(w) = sum_r <A_r z, w> A_r z
  // over the normalized generator basis, in the orthonormal basis (B_j z).
  auto lambda_apply = [&](const Eigen::VectorXd& w) {
    Eigen::VectorXd kw(2 * n);
    const Eigen::VectorXd t_x = (kinv - id) * w.head(n), t_xi = (kinv - id) * w.tail(n);
    kw << (k - id) * t_x, (k - id) * t_xi;
    for (const auto& img : images) kw += img.dot(w) * img;
    return kw;
  };
  Eigen::MatrixXd lam(kappa, kappa);
  for (int j = 0; j < kappa; ++j) {
    const Eigen::VectorXd col = lambda_apply(bz[j]);
    for (int i = 0; i < kappa; ++i) lam(i, j) = bz[i].dot(col);
  }
  out.lambda_det = lam.determinant();

  out.uv_a = max_abs(u.transpose() * u + v.transpose() * v - Eigen::MatrixXd::Identity(kappa, kappa));
  out.uv_b = max_abs(u.transpose() * v - v.transpose() * u);
  out.uv_d = max_abs((k - id) * (u * v.transpose() - v * u.transpose()));
  out.uv_e = max_abs((k - id) * (u * u.transpose() + v * v.transpose()) - (k - id));
  return out;
}

}  // namespace redweyl
