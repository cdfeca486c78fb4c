#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "redweyl/group_action.hpp"
#include "redweyl/representations.hpp"

using namespace redweyl;
using Eigen::MatrixXd;

namespace {

constexpr double kPi = std::numbers::pi;

MatrixXd rot2(double t) {
  MatrixXd r(2, 2);
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return r.array().round().matrix();
}

GroupAction dihedral4() {
  std::vector<MatrixXd> els;
  MatrixXd flip(2, 2);
  flip << 1, 0, 0, -1;
  for (int j = 0; j < 4; ++j) {
    els.push_back(rot2(j * kPi / 2));
    els.push_back(rot2(j * kPi / 2) * flip);
  }
  return GroupAction::finite(els);
}

MatrixXd so3_about(Eigen::Vector3d axis, double angle) {
  axis.normalize();
  Eigen::Matrix3d k;
  k << 0, -axis(2), axis(1), axis(2), 0, -axis(0), -axis(1), axis(0), 0;
  return Eigen::Matrix3d::Identity() + std::sin(angle) * k + (1 - std::cos(angle)) * k * k;
}

GridFunction random_field(const CenteredGrid& grid, std::uint64_t seed) {
  Stream rng(seed, 0);
  GridFunction f{grid, {}};
  for (long q = 0; q < grid.size(); ++q) f.values.emplace_back(rng.normal(), rng.normal());
  return f;
}

double max_diff(const GridFunction& a, const GridFunction& b) {
  double worst = 0.0;
  for (std::size_t q = 0; q < a.values.size(); ++q) worst = std::max(worst, std::abs(a.values[q] - b.values[q]));
  return worst;
}

double max_abs(const GridFunction& a) {
  double worst = 0.0;
  for (const auto& v : a.values) worst = std::max(worst, std::abs(v));
  return worst;
}

}  // namespace

TEST(Characters, C4IsPowersOfI) {
  const auto c4 = GroupAction::cyclic_rotations(4);
  const auto chis = characters(c4, 0);
  ASSERT_EQ(chis.size(), 4u);
  const std::complex<double> i(0, 1);
  for (const auto& chi : chis) {
    EXPECT_EQ(irrep_dimension(c4, chi), 1);
    // Generator R is element 1; chi_m(R^k) = i^{mk}.
    const auto v1 = character_value(c4, chi, c4.elements()[1]);
    EXPECT_NEAR(std::abs(v1 - std::pow(i, chi.index)), 0.0, 1e-12);
    for (int k = 0; k < 4; ++k)
      EXPECT_NEAR(std::abs(character_value(c4, chi, c4.elements()[k]) - std::pow(v1, k)), 0.0, 1e-12);
  }
  EXPECT_LT(c4.character_table().orthogonality_residual(), 1e-10);
}

TEST(Characters, D4TableHasFourLinearAndOneTwoDimensional) {
  const auto d4 = dihedral4();
  const auto& t = d4.character_table();
  ASSERT_EQ(t.num_classes(), 5);
  int sum_sq = 0, twos = 0;
  for (int i = 0; i < 5; ++i) {
    sum_sq += t.dimension(i) * t.dimension(i);
    twos += t.dimension(i) == 2;
  }
  EXPECT_EQ(sum_sq, 8);
  EXPECT_EQ(twos, 1);
  EXPECT_LT(t.orthogonality_residual(), 1e-10);
  // Every character is real for D4.
  EXPECT_LT(t.values().imag().cwiseAbs().maxCoeff(), 1e-10);
  // Principal isotropy of D4 on R^2 is trivial (generic points are off every
  // mirror), so branching equals the dimension.
  for (const auto& chi : characters(d4, 0)) EXPECT_EQ(branching_multiplicity(d4, chi), irrep_dimension(d4, chi));
}

TEST(Characters, ContinuousLabelRanges) {
  const auto so2 = GroupAction::planar_so2(2, 0, 1);
  const auto m = characters(so2, 2);
  ASSERT_EQ(m.size(), 5u);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(m[i].index, i - 2);
  const auto so3 = GroupAction::standard_so3(3);
  const auto l = characters(so3, 2);
  ASSERT_EQ(l.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(irrep_dimension(so3, l[i]), 2 * i + 1);
  EXPECT_THROW(characters(so3, -1), std::invalid_argument);
}

TEST(CharacterValue, Examples) {
  const auto so3 = GroupAction::standard_so3(3);
  const MatrixXd half_turn = so3_about({0, 0, 1}, kPi);
  EXPECT_NEAR(character_value(so3, {GroupKind::StandardSO3, 1}, half_turn).real(), -1.0, 1e-12);
  // l = 2 at angle pi/2: sum over weights -2..2 of e^{i j pi/2}.
  std::complex<double> weights = 0.0;
  for (int j = -2; j <= 2; ++j) weights += std::polar(1.0, j * kPi / 2);
  const auto v = character_value(so3, {GroupKind::StandardSO3, 2}, so3_about({1, 2, 3}, kPi / 2));
  EXPECT_NEAR(std::abs(v - weights), 0.0, 1e-12);
  EXPECT_NEAR(v.real(), -1.0, 1e-12);
  EXPECT_NEAR(character_value(so3, {GroupKind::StandardSO3, 3}, MatrixXd::Identity(3, 3)).real(), 7.0, 1e-12);
  const auto so2 = GroupAction::planar_so2(2, 0, 1);
  EXPECT_NEAR(std::abs(character_value(so2, {GroupKind::PlanarSO2, 0}, so2.rotation(1.234)) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(character_value(so2, {GroupKind::PlanarSO2, 3}, so2.rotation(0.5)) - std::polar(1.0, 1.5)),
              0.0, 1e-12);
}

TEST(CharacterValue, RejectsMismatches) {
  const auto so3 = GroupAction::standard_so3(3);
  EXPECT_THROW(character_value(so3, {GroupKind::PlanarSO2, 1}, MatrixXd::Identity(3, 3)), std::invalid_argument);
  MatrixXd not_rotation = MatrixXd::Identity(3, 3);
  not_rotation(2, 2) = -1;
  EXPECT_THROW(character_value(so3, {GroupKind::StandardSO3, 1}, not_rotation), std::invalid_argument);
}

TEST(CharacterValue, ClassFunction) {
  Stream rng(31, 0);
  const auto so3 = GroupAction::standard_so3(3);
  const auto so2 = GroupAction::planar_so2(2, 0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const MatrixXd k = so3.random_element(rng), g = so3.random_element(rng);
    for (int l = 0; l <= 4; ++l) {
      const IrrepLabel chi{GroupKind::StandardSO3, l};
      EXPECT_NEAR(std::abs(character_value(so3, chi, g * k * g.transpose()) - character_value(so3, chi, k)), 0.0,
                  1e-10);
    }
    const MatrixXd r = so2.random_element(rng), s = so2.random_element(rng);
    EXPECT_NEAR(std::abs(character_value(so2, {GroupKind::PlanarSO2, 2}, s * r * s.transpose()) -
                         character_value(so2, {GroupKind::PlanarSO2, 2}, r)),
                0.0, 1e-10);
  }
  const auto d4 = dihedral4();
  for (const auto& chi : characters(d4, 0))
    for (int a = 0; a < d4.order(); ++a)
      for (int g = 0; g < d4.order(); ++g) {
        const int conj = d4.product(d4.product(g, a), d4.inverse(g));
        EXPECT_NEAR(std::abs(character_value(d4, chi, d4.elements()[conj]) -
                             character_value(d4, chi, d4.elements()[a])),
                    0.0, 1e-10);
      }
}

TEST(CharacterValue, OrthogonalUnderHaarQuadrature) {
  const auto so3 = GroupAction::standard_so3(3);
  const auto q = haar_quadrature(so3, 12);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) {
      std::complex<double> ip = 0.0;
      for (const auto& w : q)
        ip += w.weight * character_value(so3, {GroupKind::StandardSO3, a}, w.k) *
              std::conj(character_value(so3, {GroupKind::StandardSO3, b}, w.k));
      EXPECT_NEAR(std::abs(ip - (a == b ? 1.0 : 0.0)), 0.0, 1e-10);
    }
}

TEST(Branching, Values) {
  EXPECT_EQ(branching_multiplicity(GroupAction::standard_so3(3), {GroupKind::StandardSO3, 2}), 1);
  for (int m = -3; m <= 3; ++m)
    EXPECT_EQ(branching_multiplicity(GroupAction::planar_so2(2, 0, 1), {GroupKind::PlanarSO2, m}), 1);
  const auto c4 = GroupAction::cyclic_rotations(4);
  for (const auto& chi : characters(c4, 0)) EXPECT_EQ(branching_multiplicity(c4, chi), 1);
}

TEST(Branching, BetweenZeroAndDimension) {
  MatrixXd minus(1, 1);
  minus << -1;
  for (const auto& group : {GroupAction::finite({MatrixXd::Identity(1, 1), minus}), dihedral4(),
                            GroupAction::cyclic_rotations(6)})
    for (const auto& chi : characters(group, 0)) {
      const int b = branching_multiplicity(group, chi);
      EXPECT_GE(b, 0);
      EXPECT_LE(b, irrep_dimension(group, chi));
    }
}

TEST(Projector, DeltaAveragesOverOrbit) {
  const auto c4 = GroupAction::cyclic_rotations(4);
  const CenteredGrid grid{2, 9, 0.5};
  GridFunction delta{grid, std::vector<std::complex<double>>(grid.size(), 0.0)};
  Eigen::VectorXd p(2);
  p << 1.0, 0.5;
  const long q = grid.locate(p);
  ASSERT_GE(q, 0);
  delta.values[q] = 1.0;
  const auto out = project_isotypic(c4, {GroupKind::Finite, 0}, delta);
  int nonzero = 0;
  for (int k = 0; k < 4; ++k) {
    const long img = grid.locate(c4.elements()[k] * p);
    EXPECT_NEAR(std::abs(out.values[img] - 0.25), 0.0, 1e-15);
  }
  for (const auto& v : out.values) nonzero += std::abs(v) > 0;
  EXPECT_EQ(nonzero, 4);
}

TEST(Projector, IdempotentOrthogonalComplete) {
  for (const auto& group : {GroupAction::cyclic_rotations(4), dihedral4()}) {
    const CenteredGrid grid{2, 11, 1.0};
    const auto f = random_field(grid, 77);
    const auto chis = characters(group, 0);
    GridFunction sum{grid, std::vector<std::complex<double>>(grid.size(), 0.0)};
    for (const auto& a : chis) {
      const auto pa = project_isotypic(group, a, f);
      EXPECT_LE(max_diff(project_isotypic(group, a, pa), pa), 1e-12);
      for (const auto& b : chis)
        if (!(a == b)) EXPECT_LE(max_abs(project_isotypic(group, b, pa)), 1e-12);
      for (std::size_t q = 0; q < sum.values.size(); ++q) sum.values[q] += pa.values[q];
    }
    EXPECT_LE(max_diff(sum, f), 1e-12);
  }
}

TEST(Projector, RejectsNonInvariantGridsAndContinuousGroups) {
  const CenteredGrid grid{2, 5, 1.0};
  const auto f = random_field(grid, 1);
  EXPECT_THROW(project_isotypic(GroupAction::cyclic_rotations(6), {GroupKind::Finite, 0}, f),
               std::invalid_argument);
  EXPECT_THROW(project_isotypic(GroupAction::planar_so2(2, 0, 1), {GroupKind::PlanarSO2, 0}, f),
               std::invalid_argument);
}

TEST(CharacterTable, CsvHasOneRowPerIrrep) {
  const auto csv = GroupAction::cyclic_rotations(4).character_table().to_csv();
  int lines = 0;
  for (char c : csv) lines += c == '\n';
  EXPECT_EQ(lines, 5);
}
