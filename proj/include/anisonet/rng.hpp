#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

#include "anisonet/vec3.hpp"

namespace anisonet {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: the i-th draw is a pure function of (key, i). A stream key is derived by
/// hashing a master seed together with any tuple of indices, so the numbers seen by one trial, node
/// or pair do not depend on the order in which other streams are consumed.
class CounterRng {
 public:
  constexpr explicit CounterRng(std::uint64_t key) : key_(key) {}

  static constexpr CounterRng stream(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) {
    std::uint64_t k = mix64(seed);
    for (std::uint64_t id : ids) k = mix64(k ^ mix64(id + 0x632be59bd9b4e019ULL));
    return CounterRng(k);
  }

  constexpr std::uint64_t next_u64() { return mix64(key_ ^ mix64(counter_++)); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform direction: cos(theta) uniform in [-1, 1], phi uniform in [0, 2pi).
  Vec3 unit_vector() {
    const double c = uniform(-1.0, 1.0);
    const double phi = uniform(0.0, 6.283185307179586476925);
    const double s = std::sqrt(std::fmax(0.0, 1.0 - c * c));
    return {s * std::cos(phi), s * std::sin(phi), c};
  }

  /// Haar-uniform rotation from a uniform unit quaternion (Shoemake).
  Mat3 rotation() {
    const double u1 = uniform(), u2 = uniform(), u3 = uniform();
    constexpr double two_pi = 6.283185307179586476925;
    const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
    return from_quaternion(b * std::cos(two_pi * u3), a * std::sin(two_pi * u2), a * std::cos(two_pi * u2),
                           b * std::sin(two_pi * u3));
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace anisonet
