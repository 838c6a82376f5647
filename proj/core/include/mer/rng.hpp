// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace mer::rng {

/// splitmix64 finalizer (Vigna). Stateless 64-bit mixer.
inline std::uint64_t fmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-addressed random stream: one independent generator per
/// (seed, stream) pair. Sample values therefore depend only on the pair,
/// never on how work is chunked across threads, and distinct streams are
/// statistically independent. xoshiro256++ core, state expanded from the
/// pair with splitmix64.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t st = fmix64(seed + 0x9e3779b97f4a7c15ULL) ^
                       fmix64(stream + 0x7f4a7c159e3779b9ULL);
    for (auto& w : state_) {
      st += 0x9e3779b97f4a7c15ULL;
      w = fmix64(st);
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on (0, 1]; never returns 0, so log() is always safe.
  double uniform() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  /// Exponential with unit mean.
  double exponential() { return -std::log(uniform()); }

  /// Circularly symmetric complex Gaussian, zero mean, unit variance
  /// (real and imaginary parts each have variance 1/2). Box-Muller on a
  /// pair of uniforms; |z|^2 is exactly -log(u1), an Exp(1) variate.
  std::complex<double> complex_gaussian() {
    const double r = std::sqrt(-std::log(uniform()));
    const double a = 6.283185307179586476925286766559 * uniform();
    return {r * std::cos(a), r * std::sin(a)};
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t state_[4];
};

}  // namespace mer::rng
