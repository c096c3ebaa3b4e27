#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace sparselocal {

// All randomness in the library flows through Rng. The engine is
// std::mt19937_64, whose output sequence is fixed by the standard, and every
// variate below is mapped from raw 64-bit draws with integer arithmetic only,
// so results are bit-identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t state_seed) : eng_(state_seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Threshold form of a Bernoulli(p) draw: success iff next_u64() < t where
  // t = round(p * 2^64). Computing t once outside a loop keeps hot paths to
  // one engine call plus one compare per trial.
  static std::uint64_t bernoulli_threshold(double p) {
    if (!(p >= 0.0) || !(p <= 1.0)) throw std::invalid_argument("bernoulli_threshold: p outside [0,1]");
    if (p >= 1.0) return ~std::uint64_t{0};
    // 2^64 * p, exact enough: p < 1 so the product stays below 2^64.
    return static_cast<std::uint64_t>(p * 18446744073709551616.0);
  }

  bool bernoulli(std::uint64_t threshold) {
    // threshold == ~0 approximates p = 1; the miss probability 2^-64 is
    // accepted and documented by kRngId.
    if (threshold == ~std::uint64_t{0}) return true;
    return next_u64() < threshold;
  }

  bool bernoulli_p(double p) { return bernoulli(bernoulli_threshold(p)); }

  // Uniform draw from [0, bound) by masked rejection; unbiased and engine
  // sequence consumption depends only on the draws, not on float rounding.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
    if ((bound & (bound - 1)) == 0) return next_u64() & (bound - 1);
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
      std::uint64_t x = next_u64() & mask;
      if (x < bound) return x;
    }
  }

  // Uniform double in [0,1) with 53 random bits. Kept for statistics only;
  // graph generation never draws doubles.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 eng_;
};

namespace detail {
// SplitMix64 finalizer; decorrelates seed material before it reaches the
// engine and makes (master, stream) pairs behave as independent seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace detail

// A reproducibility handle. `master` identifies a whole run; stream(i)
// derives the seed of the i-th independent substream (trial, vertex, rep...).
// Derivation is a pure function of (master, i), so any single trial can be
// recomputed without replaying the others.
struct Seed {
  std::uint64_t master = 0;

  Seed stream(std::uint64_t index) const {
    return Seed{detail::splitmix64(detail::splitmix64(master) ^ detail::splitmix64(index + 0x632be59bd9b4e019ULL))};
  }

  Rng rng() const { return Rng(detail::splitmix64(master ^ 0x8e9c5f3d1a2b4c6dULL)); }
};

}  // namespace sparselocal
