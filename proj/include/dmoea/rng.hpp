#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace dmoea {

/// Mixes one 64-bit value into a running hash (splitmix64 finalizer).
/// Used to derive decorrelated seeds for named substreams, so adding or
/// removing one consumer never shifts the draws seen by another.
inline std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
  std::uint64_t z = h + 0x9e3779b97f4a7c15ULL + v;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Mixes a string tag into a running hash (FNV-1a over bytes, then mixed).
inline std::uint64_t hash_mix(std::uint64_t h, std::string_view tag) {
  std::uint64_t f = 0xcbf29ce484222325ULL;
  for (unsigned char c : tag) f = (f ^ c) * 0x100000001b3ULL;
  return hash_mix(h, f);
}

/// Deterministic random source. All draws go through these helpers rather
/// than <random> distributions, whose output is implementation-defined;
/// this keeps streams bit-reproducible across standard libraries.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n). Requires n > 0; rejection keeps it unbiased.
  std::size_t index(std::size_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = bits();
    while (v >= limit) v = bits();
    return static_cast<std::size_t>(v % n);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dmoea
