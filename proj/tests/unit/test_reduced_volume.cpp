#include <cmath>
#include <cstring>
#include <numbers>

#include <gtest/gtest.h>

#include "redweyl/domain.hpp"
#include "redweyl/error.hpp"
#include "redweyl/quadrature.hpp"
#include "redweyl/reduced_volume.hpp"
#include "redweyl/symbols.hpp"

using namespace redweyl;
using Eigen::MatrixXd;

namespace {

constexpr double kPi = std::numbers::pi;

struct Case {
  const char* id;
  GroupAction action;
  Domain domain;
};

std::vector<Case> oracle_cases() {
  return {{"disk_so2_laplacian", GroupAction::planar_so2(2, 0, 1), Domain::disk(1.0)},
          {"ball_so3_laplacian", GroupAction::standard_so3(3), Domain::ball(3, 1.0)},
          {"ball_cyl_so2_laplacian", GroupAction::planar_so2(3, 0, 1), Domain::ball(3, 1.0)}};
}

// The disk integral written out by hand: r in (0, R], s in [-S, S], one
// angle; density sqrt(r^2 + s^2) over orbit volume 2 pi sqrt(r^2 + s^2).
double disk_oracle(double radius, double level) {
  const Rule r = gauss_legendre(8, 0.0, radius);
  const Rule s = gauss_legendre(8, -std::sqrt(level), std::sqrt(level));
  double acc = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      const double rho = std::hypot(r.nodes[i], s.nodes[j]);
      acc += r.weights[i] * s.weights[j] * 2 * kPi * rho / (2 * kPi * rho);
    }
  return acc;
}

}  // namespace

TEST(AnalyticOracle, Values) {
  EXPECT_DOUBLE_EQ(analytic_oracle("disk_so2_laplacian"), 2.0);
  EXPECT_DOUBLE_EQ(analytic_oracle("ball_so3_laplacian"), 2.0);
  EXPECT_DOUBLE_EQ(analytic_oracle("ball_cyl_so2_laplacian"), kPi * kPi / 2);
  EXPECT_EQ(analytic_oracle_cases().size(), 3u);
  EXPECT_THROW(analytic_oracle("torus"), std::invalid_argument);
}

TEST(ReducedVolume, DiskOracleByHand) { EXPECT_NEAR(disk_oracle(1.0, 1.0), 2.0, 1e-14); }

TEST(ReducedVolume, QuadratureMatchesOracles) {
  for (const auto& c : oracle_cases()) {
    const auto q = reduced_volume_quadrature(c.action, Symbol::euclidean_power(2), c.domain, 1.0);
    EXPECT_NEAR(q.value, analytic_oracle(c.id), 1e-6 * analytic_oracle(c.id)) << c.id;
    EXPECT_FALSE(q.too_coarse) << c.id;
  }
}

TEST(ReducedVolume, MonteCarloAgreesWithQuadrature) {
  for (const auto& c : oracle_cases()) {
    const auto mc = reduced_volume_mc(c.action, Symbol::euclidean_power(2), c.domain, 1.0, 100000, 42);
    const auto q = reduced_volume_quadrature(c.action, Symbol::euclidean_power(2), c.domain, 1.0);
    const double combined = std::hypot(mc.std_error, q.error_estimate);
    EXPECT_LE(std::abs(mc.value - q.value), 3 * combined) << c.id << " mc " << mc.value << " +- " << mc.std_error;
    EXPECT_FALSE(mc.low_confidence);
    EXPECT_EQ(mc.n_samples, 100000);
    EXPECT_EQ(mc.seed, 42u);
  }
}

TEST(ReducedVolume, RadiusScaling) {
  const auto so2 = GroupAction::planar_so2(2, 0, 1);
  const auto lap = Symbol::euclidean_power(2);
  const double v1 = reduced_volume_quadrature(so2, lap, Domain::disk(1.0), 1.0).value;
  const double v2 = reduced_volume_quadrature(so2, lap, Domain::disk(2.0), 1.0).value;
  EXPECT_NEAR(v2, 2.0 * v1, 1e-9);
  EXPECT_NEAR(v2, disk_oracle(2.0, 1.0), 1e-9);
}

TEST(ReducedVolume, LevelHomogeneity) {
  for (const auto& c : oracle_cases()) {
    const int nk = c.action.ambient_dim() - principal_orbit_data(c.action).kappa;
    for (int order : {2, 4}) {
      const auto sym = Symbol::euclidean_power(order);
      const double v1 = reduced_volume_quadrature(c.action, sym, c.domain, 1.0).value;
      for (double level : {0.25, 3.0, 50.0}) {
        const double vl = reduced_volume_quadrature(c.action, sym, c.domain, level).value;
        EXPECT_NEAR(vl, std::pow(level, static_cast<double>(nk) / order) * v1, 1e-3 * vl) << c.id;
      }
    }
  }
}

TEST(ReducedVolume, LevelZeroIsEmpty) {
  for (const auto& c : oracle_cases()) {
    EXPECT_EQ(reduced_volume_quadrature(c.action, Symbol::euclidean_power(2), c.domain, 0.0).value, 0.0);
    EXPECT_EQ(reduced_volume_mc(c.action, Symbol::euclidean_power(2), c.domain, 0.0, 100, 1).value, 0.0);
  }
}

TEST(ReducedVolume, MonotoneInLevelWithCommonSamples) {
  const auto so3 = GroupAction::standard_so3(3);
  const auto ball = Domain::ball(3, 1.0);
  const auto sym = Symbol::position_weighted({1.0, 0.0, 1.0}, 2);
  double prev = 0.0;
  for (double level : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    const auto mc = reduced_volume_mc(so3, sym, ball, level, 20000, 5, 2.0);
    EXPECT_GE(mc.value, prev);
    prev = mc.value;
  }
}

TEST(ReducedVolume, BitReproducible) {
  const auto so2 = GroupAction::planar_so2(3, 0, 1);
  const auto ball = Domain::ball(3, 1.0);
  const auto a = reduced_volume_mc(so2, Symbol::euclidean_power(2), ball, 1.0, 30000, 99);
  const auto b = reduced_volume_mc(so2, Symbol::euclidean_power(2), ball, 1.0, 30000, 99);
  EXPECT_EQ(std::memcmp(&a.value, &b.value, sizeof(double)), 0);
  EXPECT_EQ(std::memcmp(&a.std_error, &b.std_error, sizeof(double)), 0);
  const auto c = reduced_volume_mc(so2, Symbol::euclidean_power(2), ball, 1.0, 30000, 100);
  EXPECT_NE(a.value, c.value);
}

TEST(ReducedVolume, FiniteGroupIsPhaseSpaceVolumeOverOrder) {
  const auto c4 = GroupAction::cyclic_rotations(4);
  Eigen::VectorXd hw(2);
  hw << kPi / 2, kPi / 2;
  const auto square = Domain::box(hw);
  // Area pi^2 times the unit momentum disk pi, over |G| = 4.
  const double exact = kPi * kPi * kPi / 4;
  const auto q = reduced_volume_quadrature(c4, Symbol::euclidean_power(2), square, 1.0);
  EXPECT_NEAR(q.value, exact, 1e-6 * exact);
  const auto mc = reduced_volume_mc(c4, Symbol::euclidean_power(2), square, 1.0, 200000, 3);
  EXPECT_LE(std::abs(mc.value - exact), 3 * mc.std_error);
}

TEST(ReducedVolume, AnisotropicQuadraticScalesByDeterminant) {
  // <Q xi, xi> <= 1 with Q = q I shrinks every momentum fibre by q^{-1/2}.
  const auto so2 = GroupAction::planar_so2(2, 0, 1);
  const auto q = reduced_volume_quadrature(so2, Symbol::invariant_quadratic(4.0 * MatrixXd::Identity(2, 2)),
                                           Domain::disk(1.0), 1.0);
  EXPECT_NEAR(q.value, 1.0, 1e-8);
}

TEST(ReducedVolume, AnnulusMatchesHandIntegral) {
  // Annulus a < r < b: the disk integrand over r in (a, b) gives 2 (b - a).
  const auto so2 = GroupAction::planar_so2(2, 0, 1);
  const auto q = reduced_volume_quadrature(so2, Symbol::euclidean_power(2), Domain::annulus(0.5, 1.0), 1.0);
  EXPECT_NEAR(q.value, 1.0, 1e-8);
}

TEST(ReducedVolume, RejectsNonEllipticSymbols) {
  const Symbol flat = Symbol::custom([](const Eigen::VectorXd&, const Eigen::VectorXd& xi) { return 0.0 * xi(0); },
                                     2, "flat");
  EXPECT_THROW(reduced_volume_mc(GroupAction::planar_so2(2, 0, 1), flat, Domain::disk(1.0), 1.0, 100, 1),
               AssumptionViolation);
}
