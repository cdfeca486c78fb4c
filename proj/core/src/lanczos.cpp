#include "redweyl/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "redweyl/error.hpp"
#include "redweyl/random.hpp"

namespace redweyl {

namespace {

template <class Scalar>
using Sparse = Eigen::SparseMatrix<Scalar>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Ldlt = Eigen::SimplicialLDLT<Sparse<Scalar>, Eigen::Lower, Eigen::AMDOrdering<int>>;

template <class Scalar>
Scalar random_scalar(Stream& rng) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return rng.normal();
  } else {
    return Scalar(rng.normal(), rng.normal());
  }
}

// Factorization of B - sigma I; nudges sigma off an exact eigenvalue if the
// factorization hits a zero pivot.
template <class Scalar>
struct ShiftedFactor {
  double sigma;
  Ldlt<Scalar> ldlt;

  ShiftedFactor(const Sparse<Scalar>& b, double shift) : sigma(shift) {
    Sparse<Scalar> id(b.rows(), b.cols());
    id.setIdentity();
    for (int attempt = 0; attempt < 4; ++attempt) {
      ldlt.compute(b - Scalar(sigma) * id);
      if (ldlt.info() == Eigen::Success) {
        // vectorD() returns a copy; take it once.
        const auto d = ldlt.vectorD();
        bool finite_pivots = true;
        for (Eigen::Index i = 0; i < d.size(); ++i)
          finite_pivots &= std::isfinite(std::real(d(i))) && std::real(d(i)) != 0.0;
        if (finite_pivots) return;
      }
      sigma += 1e-10 * std::max(1.0, std::abs(sigma));
    }
    throw NumericalFailure("LDL^T factorization of the shifted matrix failed");
  }

  long negatives() const {
    const auto d = ldlt.vectorD();
    long neg = 0;
    for (Eigen::Index i = 0; i < d.size(); ++i) neg += std::real(d(i)) < 0.0;
    return neg;
  }
};

template <class Scalar>
struct Slicer {
  const Sparse<Scalar>& b;
  const SliceOptions& opt;
  SliceResult result;
  std::uint64_t stream = 0;

  long count(double sigma) {
    ++result.factorizations;
    return ShiftedFactor<Scalar>(b, sigma).negatives();
  }

  void process(double lo, double hi, long c_lo, long c_hi, int depth) {
    const long k = c_hi - c_lo;
    if (k <= 0) return;
    if (k > opt.max_per_slice || (depth > 0 && !solve(lo, hi, k))) {
      if (hi - lo <= 1e-13 * std::max(1.0, std::abs(hi)) || depth > 60) {
        std::ostringstream os;
        os << "shift-invert Lanczos could not resolve " << k << " eigenvalues in [" << lo << ", " << hi << ")";
        throw NumericalFailure(os.str());
      }
      const double mid = 0.5 * (lo + hi);
      const long c_mid = count(mid);
      process(lo, mid, c_lo, c_mid, depth + 1);
      process(mid, hi, c_mid, c_hi, depth + 1);
      return;
    }
    if (depth == 0 && !solve(lo, hi, k)) {
      const double mid = 0.5 * (lo + hi);
      const long c_mid = count(mid);
      process(lo, mid, c_lo, c_mid, 1);
      process(mid, hi, c_mid, c_hi, 1);
    }
  }

  // Finds the k eigenvalues in [lo, hi); false when they could not all be
  // found, in which case nothing is recorded.
  bool solve(double lo, double hi, long k) {
    const Eigen::Index n = b.rows();
    ShiftedFactor<Scalar> factor(b, 0.5 * (lo + hi));
    ++result.factorizations;
    std::vector<Vec<Scalar>> locked;
    std::vector<double> found;
    double worst = 0.0;

    for (int restart = 0; restart <= opt.max_restarts && static_cast<long>(found.size()) < k; ++restart) {
      const Eigen::Index available = n - static_cast<Eigen::Index>(locked.size());
      const Eigen::Index p = std::min<Eigen::Index>(available, k + k / 2 + 20);
      if (p <= 0) break;
      Mat<Scalar> v(n, p + 1);
      std::vector<double> alpha, beta;

      // Classical Gram-Schmidt against the locked vectors and the basis so
      // far, repeated once only when the first pass cancels most of w.
      auto deflate = [&](Vec<Scalar>& w, Eigen::Index cols) {
        for (int pass = 0; pass < 2; ++pass) {
          const double before = w.norm();
          for (const auto& u : locked) w -= u * u.dot(w);
          if (cols > 0) w -= v.leftCols(cols) * (v.leftCols(cols).adjoint() * w);
          if (w.norm() > 0.7 * before) break;
        }
      };

      Stream rng(opt.seed, stream++);
      Vec<Scalar> w(n);
      for (Eigen::Index i = 0; i < n; ++i) w(i) = random_scalar<Scalar>(rng);
      deflate(w, 0);
      if (w.norm() == 0.0) break;
      v.col(0) = w / w.norm();
      Eigen::Index steps = 0;
      for (Eigen::Index j = 0; j < p; ++j) {
        w = factor.ldlt.solve(v.col(j));
        const double a = std::real(v.col(j).dot(w));
        w -= Scalar(a) * v.col(j);
        if (j > 0) w -= Scalar(beta.back()) * v.col(j - 1);
        deflate(w, j + 1);
        alpha.push_back(a);
        steps = j + 1;
        const double bnorm = w.norm();
        if (j + 1 == p || bnorm <= 1e-14 * std::max(1.0, std::abs(a))) break;
        beta.push_back(bnorm);
        v.col(j + 1) = w / bnorm;
      }
      result.lanczos_steps += static_cast<int>(steps);

      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(steps, steps);
      for (Eigen::Index i = 0; i < steps; ++i) {
        t(i, i) = alpha[i];
        if (i + 1 < steps) t(i, i + 1) = t(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      bool progress = false;
      for (Eigen::Index i = 0; i < steps; ++i) {
        const double th = es.eigenvalues()(i);
        if (th == 0.0) continue;
        const double lambda = factor.sigma + 1.0 / th;
        if (lambda < lo || lambda >= hi) continue;
        Vec<Scalar> y = v.leftCols(steps) * es.eigenvectors().col(i).template cast<Scalar>();
        y.normalize();
        const double res = (b * y - Scalar(lambda) * y).norm();
        if (res > opt.tolerance * std::max(1.0, std::abs(lambda))) continue;
        worst = std::max(worst, res / std::max(1.0, std::abs(lambda)));
        locked.push_back(y);
        found.push_back(lambda);
        progress = true;
      }
      if (!progress && restart > 0 && p >= available) break;
    }
    if (static_cast<long>(found.size()) != k) return false;
    result.eigenvalues.insert(result.eigenvalues.end(), found.begin(), found.end());
    result.max_residual = std::max(result.max_residual, worst);
    return true;
  }
};

}  // namespace

template <class Scalar>
long count_below(const Eigen::SparseMatrix<Scalar>& b, double sigma) {
  return ShiftedFactor<Scalar>(b, sigma).negatives();
}

template <class Scalar>
SliceResult eigenvalues_in_interval(const Eigen::SparseMatrix<Scalar>& b, double lo, double hi,
                                    const SliceOptions& options) {
  if (b.rows() != b.cols()) throw std::invalid_argument("eigenvalues_in_interval needs a square matrix");
  if (!(hi > lo)) throw std::invalid_argument("eigenvalues_in_interval needs lo < hi");
  Slicer<Scalar> slicer{b, options, {}};
  if (b.rows() == 0) return slicer.result;
  const long c_lo = slicer.count(lo);
  const long c_hi = slicer.count(hi);
  slicer.process(lo, hi, c_lo, c_hi, 0);
  std::sort(slicer.result.eigenvalues.begin(), slicer.result.eigenvalues.end());
  return slicer.result;
}

template long count_below(const Eigen::SparseMatrix<double>&, double);
template long count_below(const Eigen::SparseMatrix<std::complex<double>>&, double);
template SliceResult eigenvalues_in_interval(const Eigen::SparseMatrix<double>&, double, double, const SliceOptions&);
template SliceResult eigenvalues_in_interval(const Eigen::SparseMatrix<std::complex<double>>&, double, double,
                                             const SliceOptions&);

}  // namespace redweyl
