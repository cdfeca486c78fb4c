#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace redweyl {

class GroupAction;
class Domain;

enum class SymbolKind { EuclideanPower, InvariantQuadratic, PositionWeighted, Custom };

// A principal symbol a_{2m}(x, xi), positively homogeneous of degree 2m in xi.
class Symbol {
 public:
  using Evaluator = std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)>;

  // |xi|^{2m}
  static Symbol euclidean_power(int order);
  // <Q xi, xi> for symmetric positive definite Q.
  static Symbol invariant_quadratic(Eigen::MatrixXd q);
  // w(|x|) |xi|^{2m} with w(r) = sum_k c_k r^k and w >= w_min > 0 required.
  static Symbol position_weighted(std::vector<double> weight_coefficients, int order);
  // User supplied evaluator. Homogeneity and invariance are checked before
  // any prediction is made (see check_assumptions).
  static Symbol custom(Evaluator f, int order, std::string name);

  double operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& xi) const;
  SymbolKind kind() const { return kind_; }
  int order() const { return order_; }
  double half_order() const { return order_ / 2.0; }
  const std::string& name() const { return name_; }
  const Eigen::MatrixXd& matrix() const { return q_; }
  const std::vector<double>& weight_coefficients() const { return weight_; }

  // Largest s >= 0 with a(x, s eta) <= level, from homogeneity. Infinite when
  // a(x, eta) <= 0.
  double momentum_bound(const Eigen::VectorXd& x, const Eigen::VectorXd& eta, double level) const;

 private:
  SymbolKind kind_ = SymbolKind::EuclideanPower;
  int order_ = 2;
  std::string name_;
  Eigen::MatrixXd q_;
  std::vector<double> weight_;
  Evaluator custom_;
};

// Sampled min of a(x, xi) over x in the domain and |xi| = 1. The origin is
// always included as a sample point when it lies in the domain.
double ellipticity_margin(const Symbol& symbol, const Domain& domain, long n_samples, std::uint64_t seed);

// max |a(kx, k xi) - a(x, xi)| over random (x, xi) and group elements k.
double invariance_residual(const Symbol& symbol, const GroupAction& action, long n_samples,
                           std::uint64_t seed);

// max relative |a(x, t xi) - t^{2m} a(x, xi)| over t in {0.5, 2, 10}.
double homogeneity_residual(const Symbol& symbol, int n, long n_samples, std::uint64_t seed);

}  // namespace redweyl
