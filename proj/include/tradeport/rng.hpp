#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace tradeport::detail {

// mt19937_64 bit stream with fixed mappings to uniform and normal variates.
// The standard distribution adaptors are implementation-defined, so they are
// avoided here; this generator produces identical sequences on every
// platform for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(bits() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  std::uint64_t below(std::uint64_t n) { return bits() % n; }

  // Box-Muller transform; one variate per two uniforms.
  double normal() {
    double u1 = 0.0;
    do {
      u1 = uniform01();
    } while (u1 <= 0.0);
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tradeport::detail
