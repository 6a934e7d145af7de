#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace qchain {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t fnv1a(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seeded deterministic generator. `fork` derives an independent child stream
/// from the seed and a tag, regardless of how many draws the parent has made,
/// so components can be added without perturbing each other's streams.
///
/// Distributions are implemented here rather than taken from <random> so that
/// traces are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  std::uint64_t seed() const noexcept { return seed_; }

  Rng fork(std::string_view tag) const { return Rng(splitmix64(seed_ ^ fnv1a(tag))); }
  Rng fork(std::uint64_t tag) const { return Rng(splitmix64(seed_ + splitmix64(tag))); }

  std::uint64_t next() { return engine_(); }

  /// Uniform on [lo, hi], inclusive.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo;
    if (span == UINT64_MAX) return next();
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return lo + v % range;
  }

  /// Uniform on [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double exponential(double mean) { return -mean * std::log1p(-unit()); }

  bool bernoulli(double p) { return unit() < p; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace qchain
