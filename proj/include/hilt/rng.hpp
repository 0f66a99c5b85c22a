#pragma once

#include <cstdint>
#include <random>

namespace hilt {

/// SplitMix64 finalizer; used to derive independent per-run seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of replication `index` under base seed `seed`:
/// splitmix64(seed XOR splitmix64(index)). Counter based, so run i never
/// depends on how many runs precede it.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(seed ^ splitmix64(index));
}

/// Reproducible random source: std::mt19937_64 plus samplers written out
/// here, because the standard library's distributions are not bit-identical
/// across implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Binomial(n, p) by geometric skipping over the success positions; cost
  /// is O(n * min(p, 1 - p) + 1). Exact for every n, p.
  std::int64_t binomial(std::int64_t n, double p);

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hilt
