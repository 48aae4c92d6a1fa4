#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "quditdecay/linalg.hpp"

namespace qd::detail {

// splitmix64: tiny, seedable, and stable across platforms, which the
// standard-library distributions are not. Used for reproducible random
// amplitude vectors in verification sweeps and tests.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // standard normal via Box-Muller
  double gaussian() {
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a,
                              std::uint64_t b, std::uint64_t c) {
  SplitMix64 rng(seed ^ (a * 0x100000001b3ull) ^ (b * 0x1000193ull) ^ c);
  return rng.next();
}

// d complex Gaussian amplitudes; normalization happens in GhzState.
inline std::vector<Cx> random_alphas(SplitMix64& rng, int d) {
  std::vector<Cx> alphas(d);
  for (int i = 0; i < d; ++i) {
    double re = rng.gaussian();
    double im = rng.gaussian();
    alphas[i] = Cx{re, im};
  }
  return alphas;
}

}  // namespace qd::detail
