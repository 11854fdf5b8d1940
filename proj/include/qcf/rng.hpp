#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace qcf {

/// Seeded, splittable pseudo-random stream (64-bit Mersenne Twister).
///
/// uniform() is computed from raw engine output rather than through a
/// standard distribution, so sampled results are identical across standard
/// library implementations. Child streams from split() are seeded through
/// SplitMix64 and are independent of later draws on the parent.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  static constexpr result_type min() { return std::numeric_limits<result_type>::min(); }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  std::uint64_t seed() const { return seed_; }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Standard normal variate (Box-Muller on uniform()).
  double normal();

  Rng split();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Seed from std::random_device; callers must echo it to keep runs replayable.
std::uint64_t entropy_seed();

}  // namespace qcf
