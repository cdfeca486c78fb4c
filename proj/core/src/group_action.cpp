#include "redweyl/group_action.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "redweyl/quadrature.hpp"
#include "redweyl/representations.hpp"

namespace redweyl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Eigen::Matrix3d rot_z(double t) {
  Eigen::Matrix3d r;
  r << std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t), 0, 0, 0, 1;
  return r;
}

Eigen::Matrix3d rot_y(double t) {
  Eigen::Matrix3d r;
  r << std::cos(t), 0, std::sin(t), 0, 1, 0, -std::sin(t), 0, std::cos(t);
  return r;
}

// Rotation by angle t about the unit axis u (Rodrigues).
Eigen::Matrix3d rot_axis(const Eigen::Vector3d& u, double t) {
  Eigen::Matrix3d k;
  k << 0, -u(2), u(1), u(2), 0, -u(0), -u(1), u(0), 0;
  return Eigen::Matrix3d::Identity() + std::sin(t) * k + (1.0 - std::cos(t)) * k * k;
}

Eigen::MatrixXd embed3(const Eigen::Matrix3d& r, int n) {
  Eigen::MatrixXd k = Eigen::MatrixXd::Identity(n, n);
  k.topLeftCorner(3, 3) = r;
  return k;
}

// Snap entries that are within rounding of 0 or +-1, so that lattice
// symmetries built from cos/sin act exactly.
void snap(Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    double& v = m.data()[i];
    if (std::abs(v) < 1e-14) v = 0.0;
    if (std::abs(std::abs(v) - 1.0) < 1e-14) v = std::copysign(1.0, v);
  }
}

Eigen::MatrixXd generator_images(const GroupAction& action, const PhasePoint& z) {
  const int d = action.dimension();
  const int n = action.ambient_dim();
  Eigen::MatrixXd imgs(2 * n, d);
  for (int i = 0; i < d; ++i) {
    const auto& a = action.lie().generators[i];
    imgs.col(i).head(n) = a * z.x;
    imgs.col(i).tail(n) = a * z.xi;
  }
  return imgs;
}

// Singular values of the images directly: going through the Gram matrix would
// square them and push the 1e-8 relative threshold down to rounding level.
int numerical_rank(const Eigen::MatrixXd& m) {
  if (m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double top = sv.maxCoeff();
  if (!(top > 0.0)) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > kRankThreshold * top;
  return rank;
}

double sq3(const Eigen::VectorXd& v) { return v.head(3).squaredNorm(); }

PhasePoint act(const Eigen::MatrixXd& k, const PhasePoint& z) { return {k * z.x, k * z.xi}; }

}  // namespace

const char* to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::Finite: return "finite";
    case GroupKind::PlanarSO2: return "planar_so2";
    case GroupKind::StandardSO3: return "standard_so3";
  }
  return "unknown";
}

Eigen::VectorXd PhasePoint::stacked() const {
  Eigen::VectorXd z(x.size() + xi.size());
  z << x, xi;
  return z;
}

PhasePoint PhasePoint::from_stacked(const Eigen::VectorXd& z) {
  const Eigen::Index n = z.size() / 2;
  return {z.head(n), z.tail(n)};
}

double lie_inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return 0.5 * (a.array() * b.array()).sum();
}

LieBasis normalize_lie_basis(const std::vector<Eigen::MatrixXd>& generators) {
  LieBasis basis;
  for (const auto& g : generators) {
    if (max_abs(g + g.transpose()) > 1e-14 * std::max(1.0, max_abs(g)))
      throw std::invalid_argument("Lie generator is not antisymmetric");
    Eigen::MatrixXd a = g;
    for (const auto& e : basis.generators) a -= lie_inner(a, e) * e;
    const double norm = std::sqrt(lie_inner(a, a));
    if (norm <= 1e-12) throw std::invalid_argument("Lie generators are linearly dependent");
    basis.generators.push_back(a / norm);
  }
  return basis;
}

GroupAction GroupAction::finite(std::vector<Eigen::MatrixXd> elements) {
  if (elements.empty()) throw std::invalid_argument("finite group needs at least one element");
  const int n = static_cast<int>(elements.front().rows());
  for (const auto& m : elements) {
    if (m.rows() != n || m.cols() != n) throw std::invalid_argument("group elements must be n x n");
    if (max_abs(m.transpose() * m - Eigen::MatrixXd::Identity(n, n)) > 1e-12)
      throw std::invalid_argument("group element is not orthogonal");
  }
  GroupAction g;
  g.kind_ = GroupKind::Finite;
  g.n_ = n;
  g.elements_ = std::move(elements);
  const int order = g.order();
  for (int a = 0; a < order; ++a)
    for (int b = a + 1; b < order; ++b)
      if (max_abs(g.elements_[a] - g.elements_[b]) <= 1e-9)
        throw std::invalid_argument("duplicate group element");
  if (g.index_of(Eigen::MatrixXd::Identity(n, n)) < 0)
    throw std::invalid_argument("finite group does not contain the identity");
  g.table_.resize(static_cast<std::size_t>(order) * order);
  g.inverse_.resize(order);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      const int c = g.index_of(g.elements_[a] * g.elements_[b]);
      if (c < 0) throw std::invalid_argument("finite group is not closed under products");
      g.table_[a * order + b] = c;
    }
    const int inv = g.index_of(g.elements_[a].transpose());
    if (inv < 0) throw std::invalid_argument("finite group is not closed under inverses");
    g.inverse_[a] = inv;
  }
  if (order <= kMaxFiniteOrder)
    g.characters_ = std::make_shared<const CharacterTable>(CharacterTable::compute(g));
  return g;
}

GroupAction GroupAction::cyclic_rotations(int order) {
  if (order < 1) throw std::invalid_argument("cyclic group order must be positive");
  std::vector<Eigen::MatrixXd> elements;
  for (int j = 0; j < order; ++j) {
    const double t = kTwoPi * j / order;
    Eigen::MatrixXd r(2, 2);
    r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    snap(r);
    elements.push_back(r);
  }
  return finite(std::move(elements));
}

GroupAction GroupAction::planar_so2(int n, int i, int j, double generator_scale) {
  if (n < 2 || i < 0 || j < 0 || i >= n || j >= n || i == j)
    throw std::invalid_argument("planar SO(2) needs two distinct coordinates in [0, n)");
  if (!(generator_scale > 0.0) || !std::isfinite(generator_scale))
    throw std::invalid_argument("generator scale must be positive");
  if (i > j) std::swap(i, j);
  GroupAction g;
  g.kind_ = GroupKind::PlanarSO2;
  g.n_ = n;
  g.plane_ = {i, j};
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  a(j, i) = generator_scale;
  a(i, j) = -generator_scale;
  g.lie_ = normalize_lie_basis({a});
  return g;
}

GroupAction GroupAction::standard_so3(int n, double generator_scale) {
  if (n < 3) throw std::invalid_argument("standard SO(3) needs n >= 3");
  if (!(generator_scale > 0.0) || !std::isfinite(generator_scale))
    throw std::invalid_argument("generator scale must be positive");
  GroupAction g;
  g.kind_ = GroupKind::StandardSO3;
  g.n_ = n;
  g.plane_ = {0, 1};
  std::vector<Eigen::MatrixXd> gens;
  for (int a = 0; a < 3; ++a) {
    // (L_a)_{bc} = -epsilon_{abc}
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    l(b, c) = -generator_scale;
    l(c, b) = generator_scale;
    gens.push_back(l);
  }
  g.lie_ = normalize_lie_basis(gens);
  return g;
}

std::string GroupAction::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case GroupKind::Finite: os << "Finite(order=" << order() << ", n=" << n_ << ")"; break;
    case GroupKind::PlanarSO2:
      os << "PlanarSO2(n=" << n_ << ", plane=(" << plane_.first << "," << plane_.second << "))";
      break;
    case GroupKind::StandardSO3: os << "StandardSO3(n=" << n_ << ")"; break;
  }
  return os.str();
}

int GroupAction::index_of(const Eigen::MatrixXd& k) const {
  if (k.rows() != n_ || k.cols() != n_) return -1;
  for (int a = 0; a < order(); ++a)
    if (max_abs(elements_[a] - k) <= 1e-9) return a;
  return -1;
}

const CharacterTable& GroupAction::character_table() const {
  if (!characters_)
    throw std::invalid_argument("character tables are limited to finite groups of order <= 64");
  return *characters_;
}

Eigen::MatrixXd GroupAction::rotation(double t) const {
  if (kind_ != GroupKind::PlanarSO2) throw std::invalid_argument("rotation(t) needs planar SO(2)");
  Eigen::MatrixXd k = Eigen::MatrixXd::Identity(n_, n_);
  const auto [i, j] = plane_;
  k(i, i) = std::cos(t);
  k(i, j) = -std::sin(t);
  k(j, i) = std::sin(t);
  k(j, j) = std::cos(t);
  return k;
}

Eigen::MatrixXd GroupAction::euler_zyz(double alpha, double beta, double gamma) const {
  if (kind_ != GroupKind::StandardSO3) throw std::invalid_argument("Euler angles need SO(3)");
  return embed3(rot_z(alpha) * rot_y(beta) * rot_z(gamma), n_);
}

Eigen::MatrixXd GroupAction::random_element(Stream& rng) const {
  switch (kind_) {
    case GroupKind::Finite: {
      const int idx = std::min(order() - 1, static_cast<int>(rng.uniform() * order()));
      return elements_[idx];
    }
    case GroupKind::PlanarSO2: return rotation(rng.uniform(0.0, kTwoPi));
    case GroupKind::StandardSO3: {
      Eigen::Quaterniond q(rng.normal(), rng.normal(), rng.normal(), rng.normal());
      q.normalize();
      return embed3(q.toRotationMatrix(), n_);
    }
  }
  return {};
}

bool GroupAction::contains(const Eigen::MatrixXd& k) const {
  if (k.rows() != n_ || k.cols() != n_) return false;
  if (max_abs(k.transpose() * k - Eigen::MatrixXd::Identity(n_, n_)) > 1e-9) return false;
  switch (kind_) {
    case GroupKind::Finite: return index_of(k) >= 0;
    case GroupKind::PlanarSO2: {
      const auto [i, j] = plane_;
      return max_abs(k - rotation(std::atan2(k(j, i), k(i, i)))) <= 1e-9;
    }
    case GroupKind::StandardSO3: {
      Eigen::MatrixXd rest = k;
      rest.topLeftCorner(3, 3).setIdentity();
      return max_abs(rest - Eigen::MatrixXd::Identity(n_, n_)) <= 1e-9 &&
             k.topLeftCorner(3, 3).determinant() > 0.0;
    }
  }
  return false;
}

std::vector<WeightedElement> haar_quadrature(const GroupAction& action, int resolution) {
  if (resolution < 1) throw std::invalid_argument("haar_quadrature: resolution must be >= 1");
  std::vector<WeightedElement> out;
  switch (action.kind()) {
    case GroupKind::Finite:
      for (const auto& k : action.elements()) out.push_back({k, 1.0 / action.order()});
      break;
    case GroupKind::PlanarSO2:
      for (int j = 0; j < resolution; ++j)
        out.push_back({action.rotation(kTwoPi * j / resolution), 1.0 / resolution});
      break;
    case GroupKind::StandardSO3: {
      // Normalized Haar measure: dalpha sin(beta) dbeta dgamma / (8 pi^2).
      const Rule u = gauss_legendre(resolution, -1.0, 1.0);
      const double w_ag = 1.0 / (static_cast<double>(resolution) * resolution);
      for (int a = 0; a < resolution; ++a)
        for (std::size_t b = 0; b < u.size(); ++b)
          for (int c = 0; c < resolution; ++c)
            out.push_back({action.euler_zyz(kTwoPi * a / resolution, std::acos(u.nodes[b]),
                                            kTwoPi * c / resolution),
                           w_ag * 0.5 * u.weights[b]});
      break;
    }
  }
  return out;
}

Eigen::VectorXd momentum_map(const GroupAction& action, const PhasePoint& z) {
  if (action.is_finite()) throw std::invalid_argument("momentum map of a finite group is empty");
  if (z.x.size() != action.ambient_dim() || z.xi.size() != action.ambient_dim())
    throw std::invalid_argument("phase point dimension does not match the action");
  Eigen::VectorXd j(action.dimension());
  for (int i = 0; i < action.dimension(); ++i) j(i) = (action.lie().generators[i] * z.x).dot(z.xi);
  return j;
}

bool in_zero_level(const GroupAction& action, const PhasePoint& z, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("in_zero_level: tol must be positive");
  if (action.is_finite()) return true;
  return momentum_map(action, z).lpNorm<Eigen::Infinity>() <= tol;
}

OrbitData orbit_data(const GroupAction& action, const PhasePoint& z) {
  if (!z.x.allFinite() || !z.xi.allFinite()) throw std::invalid_argument("orbit_data: non-finite point");
  OrbitData od;
  if (action.is_finite()) {
    const Eigen::VectorXd zs = z.stacked();
    const double tol = 1e-12 * std::max(1.0, zs.lpNorm<Eigen::Infinity>());
    for (int a = 0; a < action.order(); ++a)
      if ((act(action.elements()[a], z).stacked() - zs).lpNorm<Eigen::Infinity>() <= tol)
        od.stabilizer.push_back(a);
    const int stab = static_cast<int>(od.stabilizer.size());
    od.volume = static_cast<double>(action.order() / stab);
    od.isotropy = stab == 1 ? Isotropy::Trivial : (stab == action.order() ? Isotropy::Full : Isotropy::Subgroup);
    return od;
  }
  const Eigen::MatrixXd imgs = generator_images(action, z);
  od.dimension = numerical_rank(imgs);
  if (od.dimension == 0) {
    od.volume = 1.0;  // a single point, counting measure
    od.isotropy = Isotropy::Full;
    return od;
  }
  if (action.kind() == GroupKind::PlanarSO2) {
    od.volume = kTwoPi * imgs.col(0).norm();
    od.isotropy = Isotropy::Trivial;
  } else if (od.dimension == 2) {
    od.volume = 4.0 * std::numbers::pi * (sq3(z.x) + sq3(z.xi));
    od.isotropy = Isotropy::Circle;
  } else {
    // SO(3) with the bi-invariant metric making L_a orthonormal has volume 8 pi^2.
    od.volume = 8.0 * std::numbers::pi * std::numbers::pi *
                std::sqrt(std::max(0.0, (imgs.transpose() * imgs).determinant()));
    od.isotropy = Isotropy::Trivial;
  }
  return od;
}

OrbitVolumeEstimate orbit_volume_mc(const GroupAction& action, const PhasePoint& z, long n_samples,
                                    std::uint64_t seed) {
  if (n_samples < 2) throw std::invalid_argument("orbit_volume_mc: need at least two samples");
  const OrbitData od = orbit_data(action, z);
  if (action.is_finite() || od.dimension == 0) return {od.volume, 0.0};

  const int n = action.ambient_dim();
  const double h = 1e-5;
  // Parametrization p -> z(p) over a box of the given volume.
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> param;
  Eigen::VectorXd lo, hi;
  if (action.kind() == GroupKind::PlanarSO2) {
    param = [&](const Eigen::VectorXd& p) { return act(action.rotation(p(0)), z).stacked(); };
    lo = Eigen::VectorXd::Zero(1);
    hi = Eigen::VectorXd::Constant(1, kTwoPi);
  } else if (od.dimension == 3) {
    param = [&](const Eigen::VectorXd& p) { return act(action.euler_zyz(p(0), p(1), p(2)), z).stacked(); };
    lo = Eigen::VectorXd::Zero(3);
    hi = Eigen::Vector3d(kTwoPi, std::numbers::pi, kTwoPi);
  } else {
    // Rotate the common axis of x and xi to e_3, then sweep the 2-sphere.
    Eigen::Vector3d axis = sq3(z.x) >= sq3(z.xi) ? Eigen::Vector3d(z.x.head(3)) : Eigen::Vector3d(z.xi.head(3));
    axis.normalize();
    const Eigen::Matrix3d to_e3 =
        Eigen::Quaterniond::FromTwoVectors(axis, Eigen::Vector3d::UnitZ()).toRotationMatrix();
    const PhasePoint base = act(embed3(to_e3, n), z);
    param = [&, base](const Eigen::VectorXd& p) {
      return act(embed3(rot_z(p(0)) * rot_y(p(1)), n), base).stacked();
    };
    lo = Eigen::VectorXd::Zero(2);
    hi = Eigen::Vector2d(kTwoPi, std::numbers::pi);
  }
  const double box = (hi - lo).prod();
  const Eigen::Index dim = lo.size();
  double sum = 0.0, sum_sq = 0.0;
  for (long s = 0; s < n_samples; ++s) {
    Stream rng(seed, static_cast<std::uint64_t>(s));
    Eigen::VectorXd p(dim);
    for (Eigen::Index c = 0; c < dim; ++c) p(c) = rng.uniform(lo(c), hi(c));
    Eigen::MatrixXd jac(2 * n, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
      Eigen::VectorXd pp = p, pm = p;
      pp(c) += h;
      pm(c) -= h;
      jac.col(c) = (param(pp) - param(pm)) / (2.0 * h);
    }
    const double w = box * std::sqrt(std::max(0.0, (jac.transpose() * jac).determinant()));
    sum += w;
    sum_sq += w * w;
  }
  const double mean = sum / n_samples;
  const double var = std::max(0.0, (sum_sq - n_samples * mean * mean) / (n_samples - 1));
  return {mean, std::sqrt(var / n_samples)};
}

PrincipalOrbitType principal_orbit_data(const GroupAction& action) {
  PrincipalOrbitType p;
  switch (action.kind()) {
    case GroupKind::PlanarSO2: p.kappa = 1; p.h0 = Isotropy::Trivial; break;
    case GroupKind::StandardSO3: p.kappa = 2; p.h0 = Isotropy::Circle; break;
    case GroupKind::Finite: {
      // Stabilizer of a generic point: fixed pseudo-random direction.
      Stream rng(0x5eed, 0);
      Eigen::VectorXd x(action.ambient_dim());
      for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = rng.normal();
      const double tol = 1e-12 * x.lpNorm<Eigen::Infinity>();
      for (int a = 0; a < action.order(); ++a)
        if ((action.elements()[a] * x - x).lpNorm<Eigen::Infinity>() <= tol) p.h0_elements.push_back(a);
      p.kappa = 0;
      p.h0 = p.h0_elements.size() == 1 ? Isotropy::Trivial : Isotropy::Subgroup;
      break;
    }
  }
  return p;
}

SingularSubspace singular_subspace(const GroupAction& action) {
  SingularSubspace s;
  const int n = action.ambient_dim();
  std::vector<int> axes;
  switch (action.kind()) {
    case GroupKind::Finite:
      s.satisfied = false;
      s.note = "finite groups are handled by the kappa = 0 formula, not by Assumption 1";
      s.basis.resize(n, 0);
      return s;
    case GroupKind::PlanarSO2:
      for (int k = 0; k < n; ++k)
        if (k != action.plane().first && k != action.plane().second) axes.push_back(k);
      s.note = "rotation axis";
      break;
    case GroupKind::StandardSO3:
      for (int k = 3; k < n; ++k) axes.push_back(k);
      s.note = "coordinates fixed by SO(3)";
      break;
  }
  s.satisfied = static_cast<int>(axes.size()) < n;
  s.basis = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(axes.size()));
  for (std::size_t c = 0; c < axes.size(); ++c) s.basis(axes[c], static_cast<Eigen::Index>(c)) = 1.0;
  return s;
}

Eigen::MatrixXd random_stabilizer_element(const GroupAction& action, const PhasePoint& z, Stream& rng) {
  const OrbitData od = orbit_data(action, z);
  const int n = action.ambient_dim();
  if (action.is_finite()) {
    const auto& stab = od.stabilizer;
    const auto pick = std::min<std::size_t>(stab.size() - 1, static_cast<std::size_t>(rng.uniform() * stab.size()));
    return action.elements()[stab[pick]];
  }
  if (od.dimension == 0) return action.random_element(rng);
  if (action.kind() == GroupKind::StandardSO3 && od.dimension == 2) {
    Eigen::Vector3d axis = sq3(z.x) >= sq3(z.xi) ? Eigen::Vector3d(z.x.head(3)) : Eigen::Vector3d(z.xi.head(3));
    axis.normalize();
    return embed3(rot_axis(axis, rng.uniform(0.0, kTwoPi)), n);
  }
  return Eigen::MatrixXd::Identity(n, n);
}

}  // namespace redweyl
