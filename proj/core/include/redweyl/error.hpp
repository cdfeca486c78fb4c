#pragma once

#include <stdexcept>
#include <string>

namespace redweyl {

// Raised for malformed or unknown configuration content.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Assumption { Ellipticity, Homogeneity, Invariance, Assumption1, Assumption2 };

const char* to_string(Assumption a);

// A mathematical hypothesis of the reduced Weyl law does not hold for the
// requested configuration, so no prediction can be made.
class AssumptionViolation : public std::runtime_error {
 public:
  AssumptionViolation(Assumption which, const std::string& what)
      : std::runtime_error(std::string(to_string(which)) + ": " + what), which_(which) {}
  Assumption which() const { return which_; }

 private:
  Assumption which_;
};

class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Too few usable samples for a fit.
class InsufficientData : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

inline const char* to_string(Assumption a) {
  switch (a) {
    case Assumption::Ellipticity: return "ellipticity";
    case Assumption::Homogeneity: return "homogeneity";
    case Assumption::Invariance: return "invariance";
    case Assumption::Assumption1: return "singular set not contained in a strict subspace";
    case Assumption::Assumption2: return "boundary collar metadata";
  }
  return "unknown";
}

}  // namespace redweyl
