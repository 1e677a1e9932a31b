#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace pv {

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Independent substream seed keyed by (a, b), e.g. a grid block coordinate.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b) {
  return mix64(master ^ mix64(a ^ mix64(b)));
}

// Deterministic RNG wrapper. All distribution logic lives here so results do
// not depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(mix64(seed)) {}

  std::uint64_t next() { return eng_(); }

  // Unbiased integer in [0, n), Lemire's method.
  std::uint64_t below(std::uint64_t n) {
    while (true) {
      std::uint64_t r = eng_();
      __uint128_t m = static_cast<__uint128_t>(r) * n;
      auto lo = static_cast<std::uint64_t>(m);
      if (lo < n) {
        std::uint64_t t = (-n) % n;
        if (lo < t) continue;
      }
      return static_cast<std::uint64_t>(m >> 64);
    }
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal, Box-Muller (cosine branch only).
  double gaussian() {
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  template <typename It>
  void shuffle(It first, It last) {
    auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
      std::uint64_t j = below(i);
      std::swap(first[i - 1], first[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace pv
