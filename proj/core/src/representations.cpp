#include "redweyl/representations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "redweyl/error.hpp"

namespace redweyl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double arg_0_2pi(cplx v) {
  if (std::abs(v) < 1e-9) return 0.0;
  double a = std::arg(v);
  if (a < 0.0) a += kTwoPi;
  if (a > kTwoPi - 1e-9) a = 0.0;
  return a;
}

void require_kind(const GroupAction& action, const IrrepLabel& chi) {
  if (action.kind() != chi.kind) throw std::invalid_argument("character does not belong to this group");
  if (action.kind() == GroupKind::StandardSO3 && chi.index < 0)
    throw std::invalid_argument("SO(3) irreps are labelled by l >= 0");
  if (action.kind() == GroupKind::Finite &&
      (chi.index < 0 || chi.index >= action.character_table().num_classes()))
    throw std::invalid_argument("character index outside the character table");
}

}  // namespace

std::string to_string(const IrrepLabel& chi) {
  switch (chi.kind) {
    case GroupKind::Finite: return "chi" + std::to_string(chi.index);
    case GroupKind::PlanarSO2: return "m=" + std::to_string(chi.index);
    case GroupKind::StandardSO3: return "l=" + std::to_string(chi.index);
  }
  return "?";
}

CharacterTable CharacterTable::compute(const GroupAction& group) {
  if (!group.is_finite()) throw std::invalid_argument("character tables are for finite groups");
  const int order = group.order();
  if (order > kMaxFiniteOrder) throw std::invalid_argument("finite group order exceeds 64");

  CharacterTable t;
  t.order_ = order;
  t.class_of_.assign(order, -1);
  const int identity = group.index_of(Eigen::MatrixXd::Identity(group.ambient_dim(), group.ambient_dim()));

  // Conjugacy classes, identity class first, then by smallest member.
  std::vector<std::vector<int>> classes;
  auto add_class = [&](int g) {
    std::vector<int> members;
    for (int h = 0; h < order; ++h) {
      const int c = group.product(group.product(h, g), group.inverse(h));
      if (t.class_of_[c] < 0) {
        t.class_of_[c] = static_cast<int>(classes.size());
        members.push_back(c);
      }
    }
    std::sort(members.begin(), members.end());
    classes.push_back(members);
  };
  add_class(identity);
  for (int g = 0; g < order; ++g)
    if (t.class_of_[g] < 0) add_class(g);
  const int k = static_cast<int>(classes.size());
  for (const auto& c : classes) {
    t.class_sizes_.push_back(static_cast<int>(c.size()));
    t.class_reps_.push_back(c.front());
  }

  // Class matrices (M_r)_{s,t} = #{x in C_r : x^{-1} g_t in C_s}; the vectors
  // omega_t = h_t chi(g_t) / d are their common eigenvectors.
  Eigen::MatrixXd combo = Eigen::MatrixXd::Zero(k, k);
  for (int r = 0; r < k; ++r) {
    const double coeff = 1.0 + std::sqrt(2.0 + r) * 0.7071 + 0.1 * r * r;  // generic weights
    for (int tcol = 0; tcol < k; ++tcol)
      for (int x : classes[r]) {
        const int y = group.product(group.inverse(x), t.class_reps_[tcol]);
        combo(t.class_of_[y], tcol) += coeff;
      }
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(combo.cast<cplx>());
  if (es.info() != Eigen::Success) throw NumericalFailure("character table: eigensolver failed");

  struct Row {
    int dim;
    std::vector<double> args;
    Eigen::VectorXcd chi;
  };
  std::vector<Row> rows;
  for (int e = 0; e < k; ++e) {
    Eigen::VectorXcd w = es.eigenvectors().col(e);
    if (std::abs(w(0)) < 1e-12) throw NumericalFailure("character table: degenerate class eigenvector");
    w /= w(0);
    double norm = 0.0;
    for (int c = 0; c < k; ++c) norm += std::norm(w(c)) / t.class_sizes_[c];
    const double d = std::sqrt(order / norm);
    Row row;
    row.dim = static_cast<int>(std::lround(d));
    if (std::abs(d - row.dim) > 1e-6) throw NumericalFailure("character table: non-integral dimension");
    row.chi.resize(k);
    for (int c = 0; c < k; ++c) row.chi(c) = static_cast<double>(row.dim) * w(c) / static_cast<double>(t.class_sizes_[c]);
    for (int c = 1; c < k; ++c) row.args.push_back(arg_0_2pi(row.chi(c)));
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    for (std::size_t i = 0; i < a.args.size(); ++i)
      if (std::abs(a.args[i] - b.args[i]) > 1e-9) return a.args[i] < b.args[i];
    return false;
  });
  t.values_.resize(k, k);
  for (int i = 0; i < k; ++i) {
    t.values_.row(i) = rows[i].chi.transpose();
    t.dims_.push_back(rows[i].dim);
  }
  int sum_sq = 0;
  for (int d : t.dims_) sum_sq += d * d;
  if (sum_sq != order || t.orthogonality_residual() > 1e-10)
    throw NumericalFailure("character table: orthogonality check failed");
  return t;
}

double CharacterTable::orthogonality_residual() const {
  double worst = 0.0;
  const int k = num_classes();
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      cplx s = 0.0;
      for (int c = 0; c < k; ++c) s += static_cast<double>(class_sizes_[c]) * values_(i, c) * std::conj(values_(j, c));
      s /= static_cast<double>(order_);
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

std::string CharacterTable::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "irrep,dimension";
  for (int c = 0; c < num_classes(); ++c)
    os << ",class" << c << "_rep" << class_reps_[c] << "_re,class" << c << "_rep" << class_reps_[c] << "_im";
  os << "\r\n";
  for (int i = 0; i < num_classes(); ++i) {
    os << i << ',' << dims_[i];
    for (int c = 0; c < num_classes(); ++c) {
      const auto v = values_(i, c);
      os << ',' << (std::abs(v.real()) < 1e-14 ? 0.0 : v.real()) << ','
         << (std::abs(v.imag()) < 1e-14 ? 0.0 : v.imag());
    }
    os << "\r\n";
  }
  return os.str();
}

std::vector<IrrepLabel> characters(const GroupAction& action, int max_index) {
  std::vector<IrrepLabel> out;
  switch (action.kind()) {
    case GroupKind::Finite:
      for (int i = 0; i < action.character_table().num_classes(); ++i) out.push_back({GroupKind::Finite, i});
      break;
    case GroupKind::PlanarSO2:
      if (max_index < 0) throw std::invalid_argument("max_index must be >= 0");
      for (int m = -max_index; m <= max_index; ++m) out.push_back({GroupKind::PlanarSO2, m});
      break;
    case GroupKind::StandardSO3:
      if (max_index < 0) throw std::invalid_argument("max_index must be >= 0");
      for (int l = 0; l <= max_index; ++l) out.push_back({GroupKind::StandardSO3, l});
      break;
  }
  return out;
}

int irrep_dimension(const GroupAction& action, const IrrepLabel& chi) {
  require_kind(action, chi);
  switch (chi.kind) {
    case GroupKind::Finite: return action.character_table().dimension(chi.index);
    case GroupKind::PlanarSO2: return 1;
    case GroupKind::StandardSO3: return 2 * chi.index + 1;
  }
  return 0;
}

cplx character_value(const GroupAction& action, const IrrepLabel& chi, const Eigen::MatrixXd& k) {
  require_kind(action, chi);
  if (!action.contains(k)) throw std::invalid_argument("element does not belong to the group");
  switch (chi.kind) {
    case GroupKind::Finite: return action.character_table().value(chi.index, action.index_of(k));
    case GroupKind::PlanarSO2: {
      const auto [i, j] = action.plane();
      const double t = std::atan2(k(j, i), k(i, i));
      return std::polar(1.0, chi.index * t);
    }
    case GroupKind::StandardSO3: {
      const double c = std::clamp((k.topLeftCorner(3, 3).trace() - 1.0) / 2.0, -1.0, 1.0);
      const double t = std::acos(c);
      double v = 1.0;
      for (int j = 1; j <= chi.index; ++j) v += 2.0 * std::cos(j * t);
      return v;
    }
  }
  return 0.0;
}

int branching_multiplicity(const GroupAction& action, const IrrepLabel& chi) {
  require_kind(action, chi);
  if (!action.is_finite()) return 1;  // H0 trivial (SO(2)) or a circle with weight 0 once (SO(3))
  const auto h0 = principal_orbit_data(action).h0_elements;
  const auto& table = action.character_table();
  cplx avg = 0.0;
  for (int h : h0) avg += table.value(chi.index, h);
  avg /= static_cast<double>(h0.size());
  const long rounded = std::lround(avg.real());
  if (std::abs(avg - static_cast<double>(rounded)) > 1e-8)
    throw NumericalFailure("branching multiplicity is not an integer; character table defect");
  return static_cast<int>(rounded);
}

long CenteredGrid::size() const {
  long s = 1;
  for (int d = 0; d < dim; ++d) s *= points_per_axis;
  return s;
}

Eigen::VectorXd CenteredGrid::node(long index) const {
  Eigen::VectorXd p(dim);
  const double center = 0.5 * (points_per_axis - 1);
  for (int d = 0; d < dim; ++d) {
    p(d) = h * (static_cast<double>(index % points_per_axis) - center);
    index /= points_per_axis;
  }
  return p;
}

long CenteredGrid::locate(const Eigen::VectorXd& p) const {
  if (p.size() != dim) return -1;
  const double center = 0.5 * (points_per_axis - 1);
  long index = 0, stride = 1;
  for (int d = 0; d < dim; ++d) {
    const double f = p(d) / h + center;
    const double r = std::round(f);
    if (std::abs(f - r) > 1e-6 || r < 0 || r >= points_per_axis) return -1;
    index += static_cast<long>(r) * stride;
    stride *= points_per_axis;
  }
  return index;
}

std::vector<std::vector<long>> node_permutations(const GroupAction& action, const CenteredGrid& grid) {
  if (!action.is_finite()) throw std::invalid_argument("lattice symmetries need a finite group");
  if (action.ambient_dim() != grid.dim) throw std::invalid_argument("grid dimension does not match the group");
  std::vector<std::vector<long>> perm(action.order(), std::vector<long>(grid.size()));
  for (int g = 0; g < action.order(); ++g)
    for (long q = 0; q < grid.size(); ++q) {
      const long img = grid.locate(action.elements()[g] * grid.node(q));
      if (img < 0) throw std::invalid_argument("grid is not invariant under the group");
      perm[g][q] = img;
    }
  return perm;
}

GridFunction project_isotypic(const GroupAction& action, const IrrepLabel& chi, const GridFunction& f) {
  if (!action.is_finite())
    throw std::invalid_argument("isotypic projection on grids is only defined for finite groups");
  require_kind(action, chi);
  if (static_cast<long>(f.values.size()) != f.grid.size()) throw std::invalid_argument("grid function size mismatch");
  const auto perm = node_permutations(action, f.grid);
  const auto& table = action.character_table();
  const double scale = static_cast<double>(table.dimension(chi.index)) / action.order();
  GridFunction out{f.grid, std::vector<cplx>(f.values.size(), 0.0)};
  for (int g = 0; g < action.order(); ++g) {
    const cplx c = scale * std::conj(table.value(chi.index, g));
    for (long q = 0; q < f.grid.size(); ++q) out.values[perm[g][q]] += c * f.values[q];
  }
  return out;
}

}  // namespace redweyl
