#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace redweyl {

// SplitMix64 finalizer; a good 64-bit mixing bijection.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based stream: the j-th draw of stream `index` under `seed` is a pure
// function of (seed, index, j), so work can be split across threads in any
// order and still reproduce the same numbers.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t index)
      : key_(mix64(seed ^ mix64(index * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t bits() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double normal() {
    // Box-Muller; 1 - u keeps the log argument away from zero.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace redweyl
