//! Seeded deterministic random source shared by every stochastic operation.
//!
//! The generator is SplitMix64 (Steele, Lea, Flood 2014): 64-bit state,
//! increment 0x9e3779b97f4a7c15, mix constants 0xbf58476d1ce4e5b9 and
//! 0x94d049bb133111eb. Any port that reproduces these constants reproduces
//! the exact draw sequence, which is what makes runs replayable bit for bit.
//!
//! A RandomSource is confined to one logical task; parallel workers derive
//! independent sub-sources with split().

#ifndef BIOOPT_RANDOM_HPP
#define BIOOPT_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace bioopt {

class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Next raw 64-bit value; every call advances the state.
  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), using the top 53 bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n). Unbiased via rejection sampling.
  std::uint64_t next_index(std::uint64_t n) {
    if (n == 0) {
      throw std::invalid_argument("RandomSource::next_index: n must be >= 1");
    }
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  /// Uniform double in [lo, hi).
  double next_range(double lo, double hi) {
    return lo + next_unit() * (hi - lo);
  }

  /// Standard normal draw (Box-Muller, two uniforms per call).
  double next_gaussian() {
    const double u1 = 1.0 - next_unit();  // (0, 1], keeps log() finite
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Independent sub-source for worker `index`, derived by mixing the
  /// parent seed with the index through the SplitMix64 finalizer.
  RandomSource split(std::uint64_t index) const {
    std::uint64_t z = seed_ + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return RandomSource(z ^ (z >> 31));
  }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace bioopt

#endif  // BIOOPT_RANDOM_HPP
