#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace wsnsim {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

/// splitmix64 finalizer: a bijective 64-bit mix with good avalanche.
inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

/// Decorrelated per-repetition seed: one splitmix64 step along the stream
/// that starts at `seed`. Adjacent repetition indices land far apart.
inline std::uint64_t derive_rep_seed(std::uint64_t seed, std::uint64_t rep_index) {
  return mix64(seed + (rep_index + 1) * kGoldenGamma);
}

/// Deterministic random source. Wraps the standard-specified mt19937_64
/// engine and derives every distribution by hand so that a given seed
/// yields the same draw sequence on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1): 53 random mantissa bits.
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform_double(double lo, double hi) {
    if (!(lo <= hi)) throw std::invalid_argument("uniform_double bounds inverted");
    return lo + (hi - lo) * next_unit();
  }

  /// Uniform integer in [0, n). Rejection sampling keeps the draw unbiased.
  std::uint64_t uniform_index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index needs n > 0");
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % n;
    }
  }

  /// k distinct indices drawn uniformly from [0, n), in selection order
  /// (Floyd's algorithm; O(k) draws regardless of n).
  std::vector<std::uint32_t> sample_distinct(std::uint32_t k, std::uint32_t n) {
    if (k > n) throw std::invalid_argument("sample_distinct needs k <= n");
    std::vector<std::uint32_t> chosen;
    chosen.reserve(k);
    for (std::uint32_t j = n - k; j < n; ++j) {
      const auto t = static_cast<std::uint32_t>(uniform_index(j + 1));
      bool seen = false;
      for (std::uint32_t c : chosen) {
        if (c == t) {
          seen = true;
          break;
        }
      }
      chosen.push_back(seen ? j : t);
    }
    return chosen;
  }

  bool operator==(const Rng& other) const { return engine_ == other.engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wsnsim
