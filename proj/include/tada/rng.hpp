#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace tada::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// SplitMix64 finalizer. Counter-based use makes every draw a pure function of
/// (seed, index) and therefore identical across platforms.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

/// i-th value of the stream keyed by `seed`.
constexpr std::uint64_t at(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + (index + 1) * kGolden);
}

/// Map to [0,1) using the top 53 bits.
constexpr double to_unit(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

/// Map to (0,1]; safe under log().
constexpr double to_unit_open(std::uint64_t x) {
  return (static_cast<double>(x >> 11) + 1.0) * 0x1.0p-53;
}

/// Multiply-shift range reduction; bias is O(k / 2^64).
constexpr std::uint64_t bounded(std::uint64_t x, std::uint64_t k) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(x) * static_cast<unsigned __int128>(k)) >> 64);
}

/// Sequential SplitMix64 generator for bulk draws (graph generation, weight init).
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return mix64(state_ += kGolden); }
  double next_unit() { return to_unit(next_u64()); }
  std::uint64_t next_bounded(std::uint64_t k) { return bounded(next_u64(), k); }

  double next_gaussian() {
    const double u1 = to_unit_open(next_u64());
    const double u2 = to_unit(next_u64());
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  /// Fisher-Yates permutation of {0,...,n-1}.
  std::vector<std::int64_t> permutation(std::int64_t n) {
    std::vector<std::int64_t> p(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    for (std::int64_t i = n - 1; i > 0; --i) {
      const auto j = static_cast<std::int64_t>(next_bounded(static_cast<std::uint64_t>(i + 1)));
      std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
    }
    return p;
  }

 private:
  std::uint64_t state_;
};

}  // namespace tada::rng
