/*
 * Copyright (c) 2026 the vivolink authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef VIVOLINK_RNG_HPP
#define VIVOLINK_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>

namespace vivolink {

/// SplitMix64 finalizer. Public-domain mixing function; full 64-bit avalanche.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stream tags so independent random uses never collide on the same counter.
enum class RngStream : uint64_t {
  payload = 1,
  scrambler = 2,
  channel = 3,
  noise = 4,
  generic = 5,
};

/// Stateless counter-based random stream: value(i) depends only on
/// (seed, stream, substream, i). Draws may be evaluated in any order on any
/// worker and always reproduce bit-identically.
class CounterRng {
 public:
  CounterRng(uint64_t seed, RngStream stream, uint64_t substream = 0)
      : key_(splitmix64(splitmix64(seed ^ 0x6a09e667f3bcc908ULL) +
                        (static_cast<uint64_t>(stream) << 32)) ^
             splitmix64(substream + 0xbb67ae8584caa73bULL)) {}

  uint64_t bits(uint64_t counter) const { return splitmix64(key_ + splitmix64(counter)); }

  /// Uniform on (0, 1]; never returns 0 so log() is safe.
  double uniform(uint64_t counter) const {
    return (static_cast<double>(bits(counter) >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Two independent standard normals from one counter (Box-Muller).
  void gaussian_pair(uint64_t counter, double& g0, double& g1) const {
    const double u1 = uniform(counter * 2);
    const double u2 = uniform(counter * 2 + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * M_PI * u2;
    g0 = r * std::cos(phi);
    g1 = r * std::sin(phi);
  }

  /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
  std::complex<double> complex_gaussian(uint64_t counter, double variance) const {
    double g0;
    double g1;
    gaussian_pair(counter, g0, g1);
    const double s = std::sqrt(variance / 2.0);
    return {s * g0, s * g1};
  }

 private:
  uint64_t key_;
};

}  // namespace vivolink

#endif  // VIVOLINK_RNG_HPP
