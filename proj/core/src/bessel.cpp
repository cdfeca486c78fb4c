#include "redweyl/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "redweyl/error.hpp"

namespace redweyl {

namespace {

constexpr double kRescale = 1e250;
constexpr double kMaxOrder = 1e5;

// Newton on f with bisection safeguard inside a sign-change bracket [a, b].
template <class F>
double refine_root(F&& f, double a, double b, double guess) {
  double fa = f(a).j;
  double x = (guess > a && guess < b) ? guess : 0.5 * (a + b);
  for (int iter = 0; iter < 100; ++iter) {
    const BesselValue v = f(x);
    if (v.j == 0.0) return x;
    if ((v.j < 0.0) == (fa < 0.0)) {
      a = x;
      fa = v.j;
    } else {
      b = x;
    }
    double next = v.jprime != 0.0 ? x - v.j / v.jprime : 0.5 * (a + b);
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    const double step = std::abs(next - x);
    x = next;
    if (step <= 1e-15 * std::max(1.0, x) || b - a <= 4e-16 * std::max(1.0, x)) break;
  }
  return x;
}

}  // namespace

BesselValue bessel_j(double nu, double x) {
  if (!(nu >= 0.0) || !(x >= 0.0)) throw std::invalid_argument("bessel_j needs nu >= 0 and x >= 0");
  if (nu > kMaxOrder || !std::isfinite(x) || x > 1e7)
    throw NumericalFailure("bessel_j: order or argument beyond the supported range");
  if (x == 0.0) {
    if (nu == 0.0) return {1.0, 0.0};
    if (nu == 1.0) return {0.0, 0.5};
    return {0.0, nu < 1.0 ? std::numeric_limits<double>::infinity() : 0.0};
  }
  const long n = static_cast<long>(std::floor(nu));
  const double nu0 = nu - static_cast<double>(n);

  const long top_order = std::max(n + 1, static_cast<long>(std::ceil(x)));
  long m = top_order + static_cast<long>(std::ceil(std::sqrt(60.0 * top_order))) + 20;
  if (m % 2 != 0) ++m;

  // g_j = Gamma(nu0 + j) / j! at j = m / 2, stepped down as we go.
  long j = m / 2;
  double g = std::exp(std::lgamma(nu0 + static_cast<double>(j)) - std::lgamma(static_cast<double>(j) + 1.0));

  double above = 0.0;  // J_{nu0 + k + 1}
  double here = 1e-300;  // J_{nu0 + k}, unnormalized
  double sum = 0.0;
  double cap = 0.0, cap_next = 0.0;
  for (long k = m; k >= 0; --k) {
    if (k % 2 == 0) {
      const double c = (k == 0) ? std::tgamma(nu0 + 1.0) : (nu0 + static_cast<double>(k)) * g;
      sum += c * here;
      if (k > 2) {
        // g_{j-1} = g_j * j / (nu0 + j - 1)
        g *= static_cast<double>(j) / (nu0 + static_cast<double>(j) - 1.0);
        --j;
      }
    }
    if (k == n + 1) cap_next = here;
    if (k == n) cap = here;
    if (k == 0) break;
    const double mu = nu0 + static_cast<double>(k);
    const double below = (2.0 * mu / x) * here - above;
    above = here;
    here = below;
    if (std::abs(here) > kRescale) {
      here /= kRescale;
      above /= kRescale;
      sum /= kRescale;
      cap /= kRescale;
      cap_next /= kRescale;
    }
  }
  const double scale = std::pow(0.5 * x, nu0) / sum;
  const double jv = cap * scale;
  const double jv1 = cap_next * scale;
  return {jv, (nu / x) * jv - jv1};
}

std::vector<double> bessel_zeros(double nu, double t_max) {
  if (!(nu >= 0.0)) throw std::invalid_argument("bessel_zeros needs nu >= 0");
  if (!(t_max >= 1.0)) throw std::invalid_argument("bessel_zeros needs t_max >= 1");
  std::vector<double> zeros;
  // No zero lies below nu, and consecutive zeros are more than 3.11 apart for
  // every nu >= 0, so a step of 2 never skips a sign change.
  const double step = 2.0;
  auto f = [nu](double t) { return bessel_j(nu, t); };
  double a = std::max(nu, 1e-3);
  if (a >= t_max) return zeros;
  double fa = f(a).j;
  while (a < t_max) {
    const double b = std::min(a + step, t_max);
    const double fb = f(b).j;
    if (fb == 0.0) {
      zeros.push_back(b);
    } else if ((fa < 0.0) != (fb < 0.0) && fa != 0.0) {
      const double beta = (static_cast<double>(zeros.size()) + 1.0 + 0.5 * nu - 0.25) * std::numbers::pi;
      const double mcmahon = beta - (4.0 * nu * nu - 1.0) / (8.0 * beta);
      zeros.push_back(refine_root(f, a, b, mcmahon));
    }
    a = b;
    fa = fb;
  }
  return zeros;
}

double uniform_zero_count(double nu, double t) {
  if (t <= nu) return 0.0;
  return (std::sqrt(t * t - nu * nu) - nu * std::acos(nu / t)) / std::numbers::pi;
}

std::vector<double> annulus_cross_zeros(double nu, double a, double b, double t_max) {
  if (!(nu >= 0.0) || !(a > 0.0) || !(b > a)) throw std::invalid_argument("annulus needs 0 < a < b and nu >= 0");
  auto f = [&](double t) {
    return bessel_j(nu, a * t).j * std::cyl_neumann(nu, b * t) - bessel_j(nu, b * t).j * std::cyl_neumann(nu, a * t);
  };
  std::vector<double> zeros;
  const double step = std::numbers::pi / (4.0 * (b - a));
  double lo = std::max(nu / b, 1e-6);
  double flo = f(lo);
  while (lo < t_max) {
    const double hi = std::min(lo + step, t_max);
    const double fhi = f(hi);
    if ((flo < 0.0) != (fhi < 0.0)) {
      double l = lo, h = hi, fl = flo;
      for (int it = 0; it < 200 && h - l > 1e-14 * h; ++it) {
        const double mid = 0.5 * (l + h);
        const double fm = f(mid);
        if ((fm < 0.0) == (fl < 0.0)) {
          l = mid;
          fl = fm;
        } else {
          h = mid;
        }
      }
      zeros.push_back(0.5 * (l + h));
    }
    lo = hi;
    flo = fhi;
  }
  return zeros;
}

}  // namespace redweyl
