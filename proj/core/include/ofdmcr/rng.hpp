#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace ofdmcr {

/// Identifies one reproducible random stream: the same pair always yields the
/// same sequence, and distinct stream ids are independent.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

/// xoshiro256** seeded through splitmix64. Satisfies
/// UniformRandomBitGenerator, so it plugs into <random> distributions.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(SeedSpec seed);
  /// Stream keyed by an arbitrary path of ids below a seed, e.g.
  /// {replication, round, user}. Keys are hashed, never advanced.
  Rng(SeedSpec seed, std::initializer_list<std::uint64_t> path);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_open0() { return 1.0 - uniform(); }
  /// Unit-mean exponential by inversion, -ln U.
  double exponential();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  void seed_from(std::uint64_t key);
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace ofdmcr
