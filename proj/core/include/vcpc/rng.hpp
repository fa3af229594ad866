#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace vcpc {

/// SplitMix64 finaliser; used to decorrelate derived seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed-splitting rule: child = splitmix64(parent ^ splitmix64(tag + 1)),
/// applied left to right over the tag path. Repeat r of a run seeded with s
/// uses derive_seed(s, {r}); replica p of that repeat uses derive_seed(s, {r, p}).
/// Streams therefore do not depend on execution order or thread count.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = root;
  for (std::uint64_t tag : path) s = splitmix64(s ^ splitmix64(tag + 1));
  return s;
}

/// mt19937_64 with platform-independent uniform helpers (the standard
/// distributions are not bit-reproducible across library implementations).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n), rejection-sampled to remove modulo bias.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    std::uint64_t x = engine_();
    while (x < threshold) x = engine_();
    return x % n;
  }

  bool coin() { return (engine_() >> 63) != 0; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vcpc
