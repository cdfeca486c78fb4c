#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "redweyl/group_action.hpp"

namespace redweyl {

using cplx = std::complex<double>;

// Finite group: row of the character table. SO(2): the weight m. SO(3): l.
struct IrrepLabel {
  GroupKind kind = GroupKind::Finite;
  int index = 0;

  friend bool operator==(const IrrepLabel&, const IrrepLabel&) = default;
  friend auto operator<=>(const IrrepLabel&, const IrrepLabel&) = default;
};

std::string to_string(const IrrepLabel& chi);

class CharacterTable {
 public:
  // Burnside's algorithm: simultaneous eigenvectors of the class matrices.
  // Irreps are sorted by dimension, then by the arguments of their values on
  // the non-identity classes, so a cyclic group R^j gets chi_m(R) = e^{2 pi i m / N}.
  static CharacterTable compute(const GroupAction& group);

  int group_order() const { return order_; }
  int num_classes() const { return static_cast<int>(class_sizes_.size()); }
  const Eigen::MatrixXcd& values() const { return values_; }  // irreps x classes
  const std::vector<int>& class_sizes() const { return class_sizes_; }
  const std::vector<int>& class_representatives() const { return class_reps_; }
  int class_of(int element) const { return class_of_[element]; }
  int dimension(int irrep) const { return dims_[irrep]; }
  cplx value(int irrep, int element) const { return values_(irrep, class_of_[element]); }

  // max over (i, j) of |sum_c h_c chi_i(c) conj(chi_j(c)) / |G| - delta_ij|.
  double orthogonality_residual() const;
  std::string to_csv() const;

 private:
  int order_ = 0;
  Eigen::MatrixXcd values_;
  std::vector<int> class_sizes_;
  std::vector<int> class_reps_;
  std::vector<int> class_of_;
  std::vector<int> dims_;
};

inline constexpr int kMaxFiniteOrder = 64;

std::vector<IrrepLabel> characters(const GroupAction& action, int max_index);
int irrep_dimension(const GroupAction& action, const IrrepLabel& chi);
cplx character_value(const GroupAction& action, const IrrepLabel& chi, const Eigen::MatrixXd& k);
// Multiplicity of the trivial representation in rho_chi restricted to the
// principal isotropy group H0.
int branching_multiplicity(const GroupAction& action, const IrrepLabel& chi);

// Lattice of nodes h (k + offset), k integer, on which a finite group acts by
// permuting nodes. Only nodes inside `shape` (per-axis counts, centered) are
// stored.
struct CenteredGrid {
  int dim = 2;
  int points_per_axis = 0;
  double h = 1.0;

  long size() const;
  Eigen::VectorXd node(long index) const;
  // Index of the node at position p, or -1 if p is not a node of the grid.
  long locate(const Eigen::VectorXd& p) const;
};

struct GridFunction {
  CenteredGrid grid;
  std::vector<cplx> values;
};

// perm[g][q] = index of the node k_g applied to node q. Throws
// std::invalid_argument when some element does not map nodes to nodes.
std::vector<std::vector<long>> node_permutations(const GroupAction& action, const CenteredGrid& grid);

// P_chi f = d_chi sum_k (1/|G|) conj(chi(k)) f(k^{-1} .). Finite groups only.
GridFunction project_isotypic(const GroupAction& action, const IrrepLabel& chi, const GridFunction& f);

}  // namespace redweyl
