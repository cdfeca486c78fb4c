#pragma once

#include <cstdint>

namespace redweyl {

struct MCEstimate {
  double value = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n_samples)
  long n_samples = 0;
  std::uint64_t seed = 0;
  bool low_confidence = false;  // std_error / value > 0.05
};

}  // namespace redweyl
