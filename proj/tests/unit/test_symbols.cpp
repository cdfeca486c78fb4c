#include <cmath>

#include <gtest/gtest.h>

#include "redweyl/domain.hpp"
#include "redweyl/group_action.hpp"
#include "redweyl/symbols.hpp"

using namespace redweyl;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {
VectorXd v(std::initializer_list<double> c) { return VectorXd::Map(c.begin(), static_cast<long>(c.size())); }
}  // namespace

TEST(Symbol, EvaluationExamples) {
  EXPECT_DOUBLE_EQ(Symbol::euclidean_power(2)(v({0.3, -1}), v({3, 4})), 25.0);
  EXPECT_DOUBLE_EQ(Symbol::invariant_quadratic(2.0 * MatrixXd::Identity(2, 2))(v({0, 0}), v({1, 0})), 2.0);
  EXPECT_DOUBLE_EQ(Symbol::euclidean_power(4)(v({0, 0}), v({1, 1})), 4.0);
  EXPECT_DOUBLE_EQ(Symbol::position_weighted({1.0, 0.0, 1.0}, 2)(v({3, 4}), v({1, 0})), 26.0);
}

TEST(Symbol, RejectsBadParameters) {
  EXPECT_THROW(Symbol::euclidean_power(3), std::invalid_argument);
  EXPECT_THROW(Symbol::euclidean_power(0), std::invalid_argument);
  MatrixXd asym(2, 2);
  asym << 1, 1, 0, 1;
  EXPECT_THROW(Symbol::invariant_quadratic(asym), std::invalid_argument);
  EXPECT_THROW(Symbol::position_weighted({}, 2), std::invalid_argument);
}

TEST(EllipticityMargin, Examples) {
  const Domain disk = Domain::disk(1.0);
  EXPECT_NEAR(ellipticity_margin(Symbol::euclidean_power(2), disk, 1000, 1), 1.0, 1e-12);
  EXPECT_NEAR(ellipticity_margin(Symbol::euclidean_power(4), Domain::ball(3, 2.0), 1000, 1), 1.0, 1e-12);
  EXPECT_NEAR(ellipticity_margin(Symbol::invariant_quadratic(2.0 * MatrixXd::Identity(2, 2)), disk, 1000, 1), 2.0,
              1e-12);
  // The origin is always sampled, where w(0) = 1 is the minimum.
  EXPECT_DOUBLE_EQ(ellipticity_margin(Symbol::position_weighted({1.0, 0.0, 1.0}, 2), disk, 1000, 1), 1.0);
  const Symbol negative = Symbol::custom([](const VectorXd&, const VectorXd& xi) { return -xi.squaredNorm(); }, 2,
                                         "negative");
  EXPECT_LT(ellipticity_margin(negative, disk, 100, 1), 0.0);
}

TEST(InvarianceResidual, Examples) {
  EXPECT_LE(invariance_residual(Symbol::euclidean_power(2), GroupAction::standard_so3(3), 1000, 3), 1e-12);
  EXPECT_LE(invariance_residual(Symbol::euclidean_power(4), GroupAction::cyclic_rotations(4), 1000, 3), 1e-12);
  MatrixXd q(2, 2);
  q << 1, 0, 0, 2;
  // Direct check at xi = (1, 0) and its quarter turn: 1 versus 2.
  const Symbol aniso = Symbol::invariant_quadratic(q);
  EXPECT_DOUBLE_EQ(aniso(v({0, 0}), v({0, 1})) - aniso(v({0, 0}), v({1, 0})), 1.0);
  EXPECT_GT(invariance_residual(aniso, GroupAction::planar_so2(2, 0, 1), 1000, 3), 0.1);
  EXPECT_LE(invariance_residual(Symbol::position_weighted({1.0, 0.5, 1.0}, 2), GroupAction::standard_so3(3), 1000, 3),
            1e-12);
  EXPECT_LE(invariance_residual(Symbol::invariant_quadratic(3.0 * MatrixXd::Identity(3, 3)),
                                GroupAction::planar_so2(3, 0, 1), 1000, 3),
            1e-12);
}

TEST(Homogeneity, BuiltInsAreHomogeneous) {
  for (const auto& s : {Symbol::euclidean_power(2), Symbol::euclidean_power(6),
                        Symbol::position_weighted({2.0, 1.0}, 4),
                        Symbol::invariant_quadratic(MatrixXd::Identity(3, 3) * 1.5)})
    EXPECT_LE(homogeneity_residual(s, 3, 500, 9), 1e-10) << s.name();
  const Symbol inhomogeneous =
      Symbol::custom([](const VectorXd&, const VectorXd& xi) { return xi.squaredNorm() + 1.0; }, 2, "shifted");
  EXPECT_GT(homogeneity_residual(inhomogeneous, 2, 100, 9), 0.1);
}

TEST(Homogeneity, DirectScalingCheck) {
  Stream rng(12, 0);
  const Symbol a = Symbol::position_weighted({1.0, 0.0, 1.0}, 4);
  for (int i = 0; i < 100; ++i) {
    const VectorXd x = v({rng.normal(), rng.normal()}), xi = v({rng.normal(), rng.normal()});
    for (double t : {0.5, 2.0, 10.0}) {
      const double base = a(x, xi);
      EXPECT_NEAR(a(x, t * xi), std::pow(t, 4) * base, 1e-10 * std::pow(t, 4) * base);
    }
  }
}

TEST(Sublevel, BoundedByEllipticityMargin) {
  const Domain disk = Domain::disk(1.0);
  for (const auto& s : {Symbol::position_weighted({1.0, 0.0, 1.0}, 2),
                        Symbol::invariant_quadratic(MatrixXd::Identity(2, 2) * 3.0), Symbol::euclidean_power(4)}) {
    const double c0 = ellipticity_margin(s, disk, 2000, 5);
    ASSERT_GT(c0, 0.0);
    const double bound = std::pow(c0, -1.0 / s.order());
    Stream rng(6, 0);
    for (int i = 0; i < 500; ++i) {
      VectorXd x(2);
      do x = v({rng.uniform(-1, 1), rng.uniform(-1, 1)});
      while (!disk.contains(x));
      const double ang = rng.uniform(0, 6.283185307179586);
      const VectorXd eta = v({std::cos(ang), std::sin(ang)});
      const double sb = s.momentum_bound(x, eta, 1.0);
      EXPECT_NEAR(s(x, sb * eta), 1.0, 1e-12);
      EXPECT_LE(sb, bound * (1 + 1e-12));
    }
  }
}
