#pragma once

/// Deterministic random source.  All randomness in the library flows through
/// this type; doubles are produced from raw mt19937_64 output so streams are
/// identical across standard library implementations.  Per-sample generators
/// derive from (seed, index) so parallel schedules cannot change results.

#include <cstdint>
#include <random>

#include "qcrlab/quaternion.hpp"

namespace qcr {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

  /// Derived stream for sample `index` of stream `seed`.
  static Rng derive(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed) ^ splitmix64(index * 0x9e3779b97f4a7c15ULL + 1));
  }

  /// Uniform in [0, 1).
  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Box-Muller; avoids std::normal_distribution for reproducibility.
  double gaussian() {
    double u1 = uniform01();
    while (u1 <= 0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

  Quaternion quaternion_box(double half_width) {
    return {uniform(-half_width, half_width), uniform(-half_width, half_width),
            uniform(-half_width, half_width), uniform(-half_width, half_width)};
  }

  UnitQuaternion unit_quaternion() {
    while (true) {
      const Quaternion q{gaussian(), gaussian(), gaussian(), gaussian()};
      const double n = q.norm();
      if (n > 1e-6) return UnitQuaternion(q / n);
    }
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace qcr
