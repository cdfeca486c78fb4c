#pragma once

#include <map>
#include <string>
#include <vector>

#include "redweyl/representations.hpp"

namespace redweyl {

class Domain;

struct SpectrumEntry {
  double value;
  int multiplicity;
};

enum class SpectrumKind { ExactDisk, ExactAnnulus, ExactBall3D, FiniteDifference };

const char* to_string(SpectrumKind kind);

struct SpectrumSource {
  SpectrumKind kind = SpectrumKind::ExactDisk;
  double radius = 1.0;    // disk and ball
  double r_inner = 0.5;   // annulus
  double r_outer = 1.0;   // annulus
  double h = 0.0;         // finite differences

  static SpectrumSource exact_disk(double radius) { return {SpectrumKind::ExactDisk, radius}; }
  static SpectrumSource exact_ball3d(double radius) { return {SpectrumKind::ExactBall3D, radius}; }
  static SpectrumSource exact_annulus(double a, double b) {
    return {SpectrumKind::ExactAnnulus, b, a, b};
  }
  static SpectrumSource finite_difference(double h) {
    return {SpectrumKind::FiniteDifference, 1.0, 0.5, 1.0, h};
  }
};

// Dirichlet Laplacian eigenvalues <= lambda_max in the chi-isotypic component,
// multiplicity counted as d_chi times the multiplicity of rho_chi:
//   ExactDisk, SO(2) weight m: j_{|m|,k}^2 / R^2, multiplicity 1.
//   ExactAnnulus, SO(2) weight m: squared cross-product zeros, multiplicity 1.
//   ExactBall3D, SO(3) weight l: j_{l+1/2,k}^2 / R^2, multiplicity 2l+1.
//   ExactBall3D, SO(2) about an axis, weight m: union over l >= |m| of
//     j_{l+1/2,k}^2 / R^2, multiplicity 1 each.
// Throws std::invalid_argument for incompatible source/group pairs.
std::vector<SpectrumEntry> model_spectrum(const SpectrumSource& source, const GroupAction& action,
                                          const IrrepLabel& chi, double lambda_max);

// Several characters at once; Bessel zeros shared between characters are
// computed once.
std::map<IrrepLabel, std::vector<SpectrumEntry>> model_spectra(const SpectrumSource& source,
                                                               const GroupAction& action,
                                                               const std::vector<IrrepLabel>& chis,
                                                               double lambda_max);

// Largest eigenvalue trusted on a grid of spacing h in dimension n:
// (0.5 / h)^2 * (2 / n).
double fd_validity_ceiling(double h, int n);

struct FdSpectrum {
  std::vector<double> eigenvalues;  // ascending eigenvalues of the chi-block
  double lambda_ceiling = 0.0;
  double h = 0.0;                   // spacing actually used
  long grid_unknowns = 0;           // interior lattice nodes
  long block_size = 0;              // dimension of the isotypic block
  double max_residual = 0.0;
};

// 2n-point Dirichlet Laplacian on the lattice nodes inside the domain,
// restricted to the chi-block through an orthonormal basis of
// P_chi's range built by QR of projected delta functions on each node orbit.
// Eigenvalues up to min(lambda_max, ceiling) come from spectrum slicing.
FdSpectrum fd_spectrum(const Domain& domain, const GroupAction& action, const IrrepLabel& chi,
                       double lambda_max, double h);

struct CountingSample {
  double lambda;
  long count;
  IrrepLabel character;
};

std::vector<CountingSample> counting_function(const std::vector<SpectrumEntry>& eigs,
                                              const std::vector<double>& lambda_grid,
                                              const IrrepLabel& chi);
std::vector<SpectrumEntry> as_entries(const std::vector<double>& eigenvalues, int multiplicity = 1);

std::vector<double> lambda_grid(double lo, double hi, int points, bool logarithmic);

}  // namespace redweyl
