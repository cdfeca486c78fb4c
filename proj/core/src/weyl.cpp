#include "redweyl/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "redweyl/domain.hpp"
#include "redweyl/error.hpp"
#include "redweyl/group_action.hpp"
#include "redweyl/symbols.hpp"

namespace redweyl {

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::reduced(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

namespace {

constexpr long kCheckSamples = 4096;
constexpr std::uint64_t kCheckSeed = 0x5eed;
constexpr double kSymbolTolerance = 1e-10;

}  // namespace

void check_assumptions(const GroupAction& action, const Symbol& symbol, const Domain& domain) {
  if (domain.dim() != action.ambient_dim())
    throw std::invalid_argument("domain and group act on different dimensions");
  const int n = action.ambient_dim();

  const double margin = ellipticity_margin(symbol, domain, kCheckSamples, kCheckSeed);
  if (!(margin > 0.0)) {
    std::ostringstream os;
    os << "sampled ellipticity margin " << margin << " is not positive";
    throw AssumptionViolation(Assumption::Ellipticity, os.str());
  }
  const double hom = homogeneity_residual(symbol, n, kCheckSamples, kCheckSeed);
  if (!(hom <= kSymbolTolerance)) {
    std::ostringstream os;
    os << "symbol is not homogeneous of degree " << symbol.order() << " (residual " << hom << ")";
    throw AssumptionViolation(Assumption::Homogeneity, os.str());
  }
  const double inv = invariance_residual(symbol, action, kCheckSamples, kCheckSeed);
  if (!(inv <= kSymbolTolerance * std::max(1.0, margin))) {
    std::ostringstream os;
    os << "symbol is not invariant under " << action.describe() << " (residual " << inv << ")";
    throw AssumptionViolation(Assumption::Invariance, os.str());
  }
  const double dom = invariance_residual(domain, action, kCheckSamples, kCheckSeed);
  if (dom > 0.0) {
    std::ostringstream os;
    os << domain.describe() << " is not invariant under " << action.describe() << " (membership changed for "
       << dom * 100.0 << "% of samples)";
    throw AssumptionViolation(Assumption::Invariance, os.str());
  }
  if (!action.is_finite()) {
    const auto sing = singular_subspace(action);
    if (!sing.satisfied) throw AssumptionViolation(Assumption::Assumption1, sing.note);
  }
  if (!domain.collar_constant())
    throw AssumptionViolation(Assumption::Assumption2, domain.describe() + " has no boundary collar constant");
  if (domain.origin_on_boundary())
    throw AssumptionViolation(Assumption::Assumption2, "the origin lies on the boundary of " + domain.describe());
}

WeylPrediction predict(const GroupAction& action, const IrrepLabel& chi, const Symbol& symbol, const Domain& domain,
                       const MCEstimate& volume) {
  check_assumptions(action, symbol, domain);
  WeylPrediction p;
  p.character = chi;
  p.n = action.ambient_dim();
  p.kappa = principal_orbit_data(action).kappa;
  p.order = symbol.order();
  p.d_chi = irrep_dimension(action, chi);
  p.branching = branching_multiplicity(action, chi);
  p.reduced_volume = volume.value;
  p.reduced_volume_error = volume.std_error;
  const int reduced_dim = p.n - p.kappa;
  p.exponent = Rational::reduced(reduced_dim, p.order);
  p.remainder_exponent = Rational::reduced(4L * reduced_dim - 1, 4L * p.order);
  p.coefficient = p.d_chi * p.branching / std::pow(2.0 * std::numbers::pi, reduced_dim) * volume.value;
  return p;
}

FitResult fit(const std::vector<CountingSample>& samples, FitMode mode, double fixed_exponent) {
  std::vector<const CountingSample*> valid;
  for (const auto& s : samples)
    if (s.count > 0 && s.lambda > 0.0) valid.push_back(&s);
  if (valid.size() < static_cast<std::size_t>(kMinFitPoints))
    throw InsufficientData("fewer than five samples with a positive count");

  double lo = std::log(valid.front()->lambda), hi = lo;
  for (const auto* s : valid) {
    lo = std::min(lo, std::log(s->lambda));
    hi = std::max(hi, std::log(s->lambda));
  }
  const double mid = 0.5 * (lo + hi);
  std::vector<const CountingSample*> window;
  int usable = 0;
  for (const auto* s : valid)
    if (std::log(s->lambda) >= mid) {
      window.push_back(s);
      usable += s->count >= kMinFitCount;
    }
  if (usable < kMinFitPoints) {
    std::ostringstream os;
    os << "only " << usable << " samples with count >= " << kMinFitCount << " in the fit window";
    throw InsufficientData(os.str());
  }
  const bool constant = std::all_of(window.begin(), window.end(),
                                    [&](const CountingSample* s) { return s->count == window.front()->count; });
  if (constant) throw InsufficientData("counts are constant over the fit window");

  FitResult r;
  r.mode = mode;
  r.n_points = static_cast<int>(window.size());
  r.lambda_lo = window.front()->lambda;
  r.lambda_hi = window.front()->lambda;
  for (const auto* s : window) {
    r.lambda_lo = std::min(r.lambda_lo, s->lambda);
    r.lambda_hi = std::max(r.lambda_hi, s->lambda);
  }

  const double k = static_cast<double>(window.size());
  double log_c = 0.0;
  if (mode == FitMode::FreeExponent) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto* s : window) {
      const double x = std::log(s->lambda), y = std::log(static_cast<double>(s->count));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double denom = k * sxx - sx * sx;
    if (!(denom > 0.0)) throw InsufficientData("fit window contains a single lambda value");
    r.exponent = (k * sxy - sx * sy) / denom;
    log_c = (sy - r.exponent * sx) / k;
    r.coefficient = std::exp(log_c);
  } else {
    r.exponent = fixed_exponent;
    double sum = 0.0;
    for (const auto* s : window) sum += static_cast<double>(s->count) / std::pow(s->lambda, fixed_exponent);
    r.coefficient = sum / k;
    log_c = std::log(r.coefficient);
  }
  double ss = 0.0;
  for (const auto* s : window) {
    const double e = std::log(static_cast<double>(s->count)) - log_c - r.exponent * std::log(s->lambda);
    ss += e * e;
  }
  r.residual_rms = std::sqrt(ss / k);
  return r;
}

ComparisonReport compare(const WeylPrediction& prediction, const FitResult& exponent_fit,
                         const FitResult& coefficient_fit, const Tolerances& tol) {
  ComparisonReport r;
  r.character = prediction.character;
  r.predicted = prediction;
  r.exponent_fit = exponent_fit;
  r.coefficient_fit = coefficient_fit;
  r.coefficient_rel_err = std::abs(coefficient_fit.coefficient / prediction.coefficient - 1.0);
  r.exponent_abs_err = std::abs(exponent_fit.exponent - prediction.exponent.value());
  r.coefficient_pass = r.coefficient_rel_err <= tol.coefficient_rel;
  r.exponent_pass = r.exponent_abs_err <= tol.exponent_abs;
  return r;
}

ComparisonReport compare(const WeylPrediction& prediction, const FitResult& fit, const Tolerances& tol) {
  return compare(prediction, fit, fit, tol);
}

}  // namespace redweyl
