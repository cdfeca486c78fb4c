#include "redweyl/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <stdexcept>

#include <Eigen/QR>
#include <Eigen/Sparse>

#include "redweyl/bessel.hpp"
#include "redweyl/domain.hpp"
#include "redweyl/error.hpp"
#include "redweyl/lanczos.hpp"
#include "redweyl/parallel.hpp"

namespace redweyl {

const char* to_string(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::ExactDisk: return "exact_disk";
    case SpectrumKind::ExactAnnulus: return "exact_annulus";
    case SpectrumKind::ExactBall3D: return "exact_ball3d";
    case SpectrumKind::FiniteDifference: return "finite_difference";
  }
  return "unknown";
}

namespace {

// Radial problem for one Bessel order: eigenvalues (t / scale)^2 for each zero
// t of the radial function, repeated `multiplicity` times in the count.
struct RadialMode {
  double nu;
  int multiplicity;
};

void check_pairing(const SpectrumSource& source, const GroupAction& action, const IrrepLabel& chi) {
  if (chi.kind != action.kind()) throw std::invalid_argument("character does not belong to the action's group");
  switch (source.kind) {
    case SpectrumKind::ExactDisk:
    case SpectrumKind::ExactAnnulus:
      if (action.kind() != GroupKind::PlanarSO2 || action.ambient_dim() != 2)
        throw std::invalid_argument("disk and annulus spectra pair with planar SO(2) on R^2");
      break;
    case SpectrumKind::ExactBall3D:
      if (action.ambient_dim() != 3 || action.is_finite())
        throw std::invalid_argument("ball spectra pair with SO(3) or an SO(2) subgroup on R^3");
      if (action.kind() == GroupKind::StandardSO3 && chi.index < 0)
        throw std::invalid_argument("SO(3) characters are labelled by l >= 0");
      break;
    case SpectrumKind::FiniteDifference:
      throw std::invalid_argument("finite-difference spectra are computed by fd_spectrum");
  }
  if (source.kind == SpectrumKind::ExactAnnulus && !(source.r_inner > 0.0 && source.r_outer > source.r_inner))
    throw std::invalid_argument("annulus needs 0 < r_inner < r_outer");
  if (source.kind != SpectrumKind::ExactAnnulus && !(source.radius > 0.0))
    throw std::invalid_argument("radius must be positive");
}

std::vector<RadialMode> radial_modes(const SpectrumSource& source, const GroupAction& action, const IrrepLabel& chi,
                                     double t_max) {
  if (source.kind != SpectrumKind::ExactBall3D) return {{static_cast<double>(std::abs(chi.index)), 1}};
  if (action.kind() == GroupKind::StandardSO3) return {{chi.index + 0.5, 2 * chi.index + 1}};
  // Cylindrical SO(2): every l >= |m| carries exactly one weight-m function.
  // J_nu has no zeros below nu, so the sum over l stops at t_max.
  std::vector<RadialMode> modes;
  for (int l = std::abs(chi.index); l + 0.5 < t_max; ++l) modes.push_back({l + 0.5, 1});
  return modes;
}

}  // namespace

std::vector<SpectrumEntry> model_spectrum(const SpectrumSource& source, const GroupAction& action,
                                          const IrrepLabel& chi, double lambda_max) {
  return model_spectra(source, action, {chi}, lambda_max).at(chi);
}

std::map<IrrepLabel, std::vector<SpectrumEntry>> model_spectra(const SpectrumSource& source,
                                                               const GroupAction& action,
                                                               const std::vector<IrrepLabel>& chis,
                                                               double lambda_max) {
  std::map<IrrepLabel, std::vector<SpectrumEntry>> out;
  if (!(lambda_max > 0.0)) {
    for (const auto& chi : chis) {
      check_pairing(source, action, chi);
      out[chi] = {};
    }
    return out;
  }
  const double scale = source.kind == SpectrumKind::ExactAnnulus ? 1.0 : source.radius;
  const double t_max = std::sqrt(lambda_max) * scale;

  std::map<IrrepLabel, std::vector<RadialMode>> modes;
  std::set<double> orders;
  for (const auto& chi : chis) {
    check_pairing(source, action, chi);
    modes[chi] = radial_modes(source, action, chi, t_max);
    for (const auto& m : modes[chi]) orders.insert(m.nu);
  }

  const std::vector<double> nus(orders.begin(), orders.end());
  std::vector<std::vector<double>> zeros(nus.size());
  for_each_block(nus.size(), [&](std::size_t i) {
    zeros[i] = source.kind == SpectrumKind::ExactAnnulus
                   ? annulus_cross_zeros(nus[i], source.r_inner, source.r_outer, t_max)
                   : bessel_zeros(nus[i], t_max);
  });

  for (const auto& chi : chis) {
    std::vector<SpectrumEntry> entries;
    for (const auto& m : modes[chi]) {
      const auto it = std::lower_bound(nus.begin(), nus.end(), m.nu);
      for (double t : zeros[it - nus.begin()]) {
        const double lambda = (t / scale) * (t / scale);
        if (lambda <= lambda_max) entries.push_back({lambda, m.multiplicity});
      }
    }
    std::sort(entries.begin(), entries.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.value < b.value; });
    out[chi] = std::move(entries);
  }
  return out;
}

double fd_validity_ceiling(double h, int n) { return (0.5 / h) * (0.5 / h) * (2.0 / n); }

FdSpectrum fd_spectrum(const Domain& domain, const GroupAction& action, const IrrepLabel& chi, double lambda_max,
                       double h) {
  if (!(h > 0.0)) throw std::invalid_argument("grid spacing must be positive");
  if (!action.is_finite()) throw std::invalid_argument("finite-difference spectra need a finite group");
  if (chi.kind != GroupKind::Finite) throw std::invalid_argument("character does not belong to a finite group");
  const int n = domain.dim();
  if (action.ambient_dim() != n) throw std::invalid_argument("group and domain dimensions differ");

  // For boxes the spacing is snapped so that the faces fall on grid lines and
  // the Dirichlet condition is imposed exactly there.
  const double extent = domain.half_widths().maxCoeff();
  int intervals = 2 * static_cast<int>(std::ceil(extent / h));
  if (domain.kind() == DomainKind::Box) {
    intervals = std::max(2, static_cast<int>(std::lround(2.0 * extent / h)));
    h = 2.0 * extent / intervals;
  }
  const CenteredGrid grid{n, intervals + 1, h};
  const auto perm = node_permutations(action, grid);

  // Nodes on the boundary are excluded by testing a slightly dilated copy.
  std::vector<long> interior_index(grid.size(), -1);
  long unknowns = 0;
  for (long q = 0; q < grid.size(); ++q)
    if (domain.contains(grid.node(q) * (1.0 + 1e-9))) interior_index[q] = unknowns++;

  const auto& table = action.character_table();
  const int order = action.order();
  const double pscale = static_cast<double>(table.dimension(chi.index)) / order;

  // Orthonormal basis of the range of P_chi, one orbit at a time.
  std::vector<std::vector<std::pair<long, cplx>>> basis;  // sparse columns over interior nodes
  std::vector<char> visited(grid.size(), 0);
  for (long q = 0; q < grid.size(); ++q) {
    if (interior_index[q] < 0 || visited[q]) continue;
    std::vector<long> orbit;
    for (int g = 0; g < order; ++g) {
      const long img = perm[g][q];
      if (std::find(orbit.begin(), orbit.end(), img) == orbit.end()) orbit.push_back(img);
    }
    for (long o : orbit) {
      visited[o] = 1;
      if (interior_index[o] < 0) throw std::invalid_argument("domain is not invariant under the group");
    }
    const int size = static_cast<int>(orbit.size());
    Eigen::MatrixXcd projected = Eigen::MatrixXcd::Zero(size, size);
    for (int c = 0; c < size; ++c)
      for (int g = 0; g < order; ++g) {
        const long img = perm[g][orbit[c]];
        const int row = static_cast<int>(std::find(orbit.begin(), orbit.end(), img) - orbit.begin());
        projected(row, c) += pscale * std::conj(table.value(chi.index, g));
      }
    // `projected` is an orthogonal projector, so its nonzero singular values are
    // 1 and the rank test can be absolute. A relative test would promote the
    // rounding-level image of a fixed node under a nontrivial character.
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(projected);
    const Eigen::MatrixXcd qmat = qr.householderQ() * Eigen::MatrixXcd::Identity(size, size);
    int rank = 0;
    while (rank < size && std::abs(qr.matrixQR()(rank, rank)) > 1e-8) ++rank;
    for (int r = 0; r < rank; ++r) {
      std::vector<std::pair<long, cplx>> col;
      for (int i = 0; i < size; ++i)
        if (std::abs(qmat(i, r)) > 1e-15) col.emplace_back(orbit[i], qmat(i, r));
      basis.push_back(std::move(col));
    }
  }

  // B = V^* L V with L the negative discrete Laplacian. Columns are supported
  // on single orbits, so B inherits the stencil's sparsity.
  const long m = static_cast<long>(basis.size());
  std::vector<std::vector<std::pair<long, cplx>>> node_to_columns(grid.size());
  for (long c = 0; c < m; ++c)
    for (const auto& [node, v] : basis[c]) node_to_columns[node].emplace_back(c, v);

  std::vector<long> stride(n, 1);
  for (int d = 1; d < n; ++d) stride[d] = stride[d - 1] * grid.points_per_axis;
  const double inv_h2 = 1.0 / (h * h);
  std::vector<Eigen::Triplet<cplx>> triplets;
  for (long c = 0; c < m; ++c) {
    // (L v_c) on interior nodes, then project onto every column touching it.
    std::vector<std::pair<long, cplx>> lv;
    for (const auto& [node, v] : basis[c]) {
      lv.emplace_back(node, 2.0 * n * inv_h2 * v);
      long rem = node;
      for (int d = 0; d < n; ++d) {
        const long coord = rem % grid.points_per_axis;
        rem /= grid.points_per_axis;
        if (coord > 0 && interior_index[node - stride[d]] >= 0) lv.emplace_back(node - stride[d], -inv_h2 * v);
        if (coord + 1 < grid.points_per_axis && interior_index[node + stride[d]] >= 0)
          lv.emplace_back(node + stride[d], -inv_h2 * v);
      }
    }
    for (const auto& [node, w] : lv)
      for (const auto& [r, v] : node_to_columns[node]) triplets.emplace_back(r, c, std::conj(v) * w);
  }
  Eigen::SparseMatrix<cplx> b(m, m);
  b.setFromTriplets(triplets.begin(), triplets.end());
  b.prune(cplx(0.0), 1e-14);

  FdSpectrum out;
  out.h = h;
  out.lambda_ceiling = fd_validity_ceiling(h, n);
  out.grid_unknowns = unknowns;
  out.block_size = m;
  const double top = std::min(lambda_max, out.lambda_ceiling);
  if (m == 0 || !(top > 0.0)) return out;
  SliceOptions options;
  options.tolerance = 1e-8;
  // Real characters give a real block; the real solver moves half the data.
  double max_imag = 0.0;
  for (int c = 0; c < b.outerSize(); ++c)
    for (Eigen::SparseMatrix<cplx>::InnerIterator it(b, c); it; ++it) max_imag = std::max(max_imag, std::abs(it.value().imag()));
  const auto slice = max_imag <= 1e-12 * inv_h2 ? eigenvalues_in_interval(Eigen::SparseMatrix<double>(b.real()), 0.0, top, options)
                                                : eigenvalues_in_interval(b, 0.0, top, options);
  out.eigenvalues = slice.eigenvalues;
  out.max_residual = slice.max_residual;
  return out;
}

std::vector<CountingSample> counting_function(const std::vector<SpectrumEntry>& eigs,
                                              const std::vector<double>& lambda_grid, const IrrepLabel& chi) {
  std::vector<double> values;
  std::vector<long> cumulative;
  long total = 0;
  for (const auto& e : eigs) {
    if (!values.empty() && e.value < values.back()) throw std::invalid_argument("eigenvalues must be ascending");
    total += e.multiplicity;
    values.push_back(e.value);
    cumulative.push_back(total);
  }
  std::vector<CountingSample> out;
  out.reserve(lambda_grid.size());
  for (double lambda : lambda_grid) {
    const auto it = std::upper_bound(values.begin(), values.end(), lambda);
    const long count = it == values.begin() ? 0 : cumulative[it - values.begin() - 1];
    out.push_back({lambda, count, chi});
  }
  return out;
}

std::vector<SpectrumEntry> as_entries(const std::vector<double>& eigenvalues, int multiplicity) {
  std::vector<SpectrumEntry> out;
  out.reserve(eigenvalues.size());
  for (double v : eigenvalues) out.push_back({v, multiplicity});
  return out;
}

std::vector<double> lambda_grid(double lo, double hi, int points, bool logarithmic) {
  if (points < 1) throw std::invalid_argument("lambda grid needs at least one point");
  if (!(hi >= lo) || (logarithmic && !(lo > 0.0))) throw std::invalid_argument("invalid lambda grid range");
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = hi;
    return out;
  }
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    out[i] = logarithmic ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace redweyl
