#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "redweyl/random.hpp"

namespace redweyl {

enum class GroupKind { Finite, PlanarSO2, StandardSO3 };

const char* to_string(GroupKind kind);

// A point z = (x, xi) of the cotangent bundle T*R^n = R^n x R^n.
struct PhasePoint {
  Eigen::VectorXd x;
  Eigen::VectorXd xi;

  Eigen::VectorXd stacked() const;
  static PhasePoint from_stacked(const Eigen::VectorXd& z);
};

struct LieBasis {
  std::vector<Eigen::MatrixXd> generators;
  int dimension() const { return static_cast<int>(generators.size()); }
};

// Inner product used to normalize Lie algebra bases: <<A, B>> = tr(A^T B) / 2.
// Under it the planar rotation generator with exp(2 pi A) = I has unit norm,
// and so do the three standard so(3) generators.
double lie_inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Gram-Schmidt with respect to lie_inner. Rescaling any input by a power of two
// reproduces the original basis bit for bit.
LieBasis normalize_lie_basis(const std::vector<Eigen::MatrixXd>& generators);

class CharacterTable;

// One of the supported compact subgroups of O(n), together with the data the
// rest of the library needs: Lie generators, the element list of a finite
// group with its multiplication table, and the character table.
class GroupAction {
 public:
  // A finite group given by its orthogonal matrices. The list is validated for
  // orthogonality, identity, closure and inverses.
  static GroupAction finite(std::vector<Eigen::MatrixXd> elements);
  // Rotations of R^2 by multiples of 2 pi / order, generated as powers R^j.
  static GroupAction cyclic_rotations(int order);
  // SO(2) rotating the coordinate plane (i, j) of R^n. `generator_scale`
  // multiplies the raw generator before normalization and therefore has no
  // effect on any result.
  static GroupAction planar_so2(int n, int i, int j, double generator_scale = 1.0);
  // SO(3) acting on the first three coordinates of R^n.
  static GroupAction standard_so3(int n, double generator_scale = 1.0);

  GroupKind kind() const { return kind_; }
  int ambient_dim() const { return n_; }
  // Dimension d of G (0 for finite groups).
  int dimension() const { return lie_.dimension(); }
  bool is_finite() const { return kind_ == GroupKind::Finite; }
  const LieBasis& lie() const { return lie_; }
  std::pair<int, int> plane() const { return plane_; }
  std::string describe() const;

  // Finite groups only.
  int order() const { return static_cast<int>(elements_.size()); }
  const std::vector<Eigen::MatrixXd>& elements() const { return elements_; }
  int product(int a, int b) const { return table_[a * order() + b]; }
  int inverse(int a) const { return inverse_[a]; }
  // Index of the element equal to k to 1e-9, or -1.
  int index_of(const Eigen::MatrixXd& k) const;
  const CharacterTable& character_table() const;

  // SO(2): rotation exp(t A) by angle t. SO(3): R_z(alpha) R_y(beta) R_z(gamma)
  // embedded in O(n).
  Eigen::MatrixXd rotation(double t) const;
  Eigen::MatrixXd euler_zyz(double alpha, double beta, double gamma) const;
  // Haar-random element.
  Eigen::MatrixXd random_element(Stream& rng) const;
  // Whether k is an element of this group (to 1e-9).
  bool contains(const Eigen::MatrixXd& k) const;

 private:
  GroupAction() = default;

  GroupKind kind_ = GroupKind::Finite;
  int n_ = 0;
  LieBasis lie_;
  std::pair<int, int> plane_{0, 1};
  std::vector<Eigen::MatrixXd> elements_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::shared_ptr<const CharacterTable> characters_;
};

struct WeightedElement {
  Eigen::MatrixXd k;
  double weight;
};

// Quadrature for the normalized Haar measure. SO(2): `resolution` equispaced
// rotations (exact for trigonometric degree < resolution). SO(3): product rule
// in Euler angles with `resolution` trapezoid nodes in alpha and gamma and
// `resolution` Gauss-Legendre nodes in cos(beta); exact for all matrix
// coefficients of irreps with l < resolution. Finite: every element, 1/|G|.
std::vector<WeightedElement> haar_quadrature(const GroupAction& action, int resolution);

// (<A_1 x, xi>, ..., <A_d x, xi>).
Eigen::VectorXd momentum_map(const GroupAction& action, const PhasePoint& z);
bool in_zero_level(const GroupAction& action, const PhasePoint& z, double tol);

enum class Isotropy { Trivial, Circle, Full, Subgroup };

struct OrbitData {
  int dimension = 0;
  double volume = 0.0;
  Isotropy isotropy = Isotropy::Trivial;
  std::vector<int> stabilizer;  // element indices, finite groups only
};

// Relative singular value threshold below which generator images count as
// linearly dependent.
inline constexpr double kRankThreshold = 1e-8;

OrbitData orbit_data(const GroupAction& action, const PhasePoint& z);

struct OrbitVolumeEstimate {
  double value;
  double std_error;
};

// Monte Carlo estimate of the orbit volume from the parametrization
// k -> k z, with the Jacobian taken by finite differences. Used to validate
// the closed forms in orbit_data.
OrbitVolumeEstimate orbit_volume_mc(const GroupAction& action, const PhasePoint& z, long n_samples,
                                    std::uint64_t seed);

struct PrincipalOrbitType {
  int kappa = 0;  // dim G / H0
  Isotropy h0 = Isotropy::Trivial;
  std::vector<int> h0_elements;  // finite groups only
};

PrincipalOrbitType principal_orbit_data(const GroupAction& action);

struct SingularSubspace {
  bool satisfied = false;
  Eigen::MatrixXd basis;  // n x k, orthonormal columns
  std::string note;
};

// A strict subspace containing every point of R^n with non-principal
// isotropy, when the catalog knows one.
SingularSubspace singular_subspace(const GroupAction& action);

// Element of the stabilizer G_z drawn at random (the identity when G_z is
// trivial).
Eigen::MatrixXd random_stabilizer_element(const GroupAction& action, const PhasePoint& z,
                                          Stream& rng);

}  // namespace redweyl
