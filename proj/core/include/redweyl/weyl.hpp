#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "redweyl/estimate.hpp"
#include "redweyl/representations.hpp"
#include "redweyl/spectra.hpp"

namespace redweyl {

class Domain;
class Symbol;

struct Rational {
  long num = 0;
  long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  static Rational reduced(long num, long den);
};

struct WeylPrediction {
  IrrepLabel character;
  double coefficient = 0.0;   // d_chi [rho_chi|H0 : 1] / (2 pi)^{n-kappa} * reduced volume
  Rational exponent;          // (n - kappa) / 2m
  Rational remainder_exponent;  // (n - kappa - 1/4) / 2m
  int d_chi = 1;
  int branching = 1;
  int n = 0;
  int kappa = 0;
  int order = 2;
  double reduced_volume = 0.0;
  double reduced_volume_error = 0.0;

  double evaluate(double lambda) const { return coefficient * std::pow(lambda, exponent.value()); }
};

// Checks the hypotheses (ellipticity margin > 0, invariance of symbol and
// domain, Assumption 1 or the finite path, Assumption 2 metadata), then
// assembles C_chi and the exponents. Violations throw AssumptionViolation.
WeylPrediction predict(const GroupAction& action, const IrrepLabel& chi, const Symbol& symbol,
                       const Domain& domain, const MCEstimate& volume);

// Hypothesis checks on their own, as used by predict.
void check_assumptions(const GroupAction& action, const Symbol& symbol, const Domain& domain);

enum class FitMode { FreeExponent, FixedExponent };

struct FitResult {
  FitMode mode = FitMode::FreeExponent;
  double exponent = 0.0;
  double coefficient = 0.0;
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  double residual_rms = 0.0;  // of log(count) about the fitted line
  int n_points = 0;
};

inline constexpr int kMinFitPoints = 5;
inline constexpr long kMinFitCount = 10;

// Window: samples with positive count whose log(lambda) lies in the upper half
// of the log-lambda range of those samples (the midpoint itself included).
// Free mode regresses log(count) on log(lambda); fixed mode averages
// count / lambda^p. Throws InsufficientData when fewer than five window
// samples have count >= 10, or when the counts are all equal.
FitResult fit(const std::vector<CountingSample>& samples, FitMode mode, double fixed_exponent = 0.0);

struct Tolerances {
  double coefficient_rel = 0.05;
  double exponent_abs = 0.02;
};

struct ComparisonReport {
  IrrepLabel character;
  WeylPrediction predicted;
  FitResult exponent_fit;
  FitResult coefficient_fit;
  double coefficient_rel_err = 0.0;
  double exponent_abs_err = 0.0;
  bool coefficient_pass = false;
  bool exponent_pass = false;
  bool pass() const { return coefficient_pass && exponent_pass; }
};

// Exponent judged from `exponent_fit`, coefficient from `coefficient_fit`
// (normally a free and a fixed-exponent fit of the same data).
ComparisonReport compare(const WeylPrediction& prediction, const FitResult& exponent_fit,
                         const FitResult& coefficient_fit, const Tolerances& tol);
ComparisonReport compare(const WeylPrediction& prediction, const FitResult& fit, const Tolerances& tol);

}  // namespace redweyl
