#ifndef SELAB_RNG_HPP
#define SELAB_RNG_HPP

#include <array>
#include <cstdint>

namespace selab {

/// Reproducible random stream keyed by (seed, stream_id).
///
/// Equal (seed, stream_id) replay the exact same sequence bitwise. Streams
/// sharing a seed but differing in stream_id are seeded through independent
/// splitmix64 scrambles of the pair, which keeps them statistically
/// independent for replication sharding. The underlying generator is
/// xoshiro256++.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

  /// Standard normal draw via the inverse CDF (deterministic, no rejection).
  double normal();

  /// Exponential draw with the given rate.
  double exponential(double rate);

 private:
  std::array<std::uint64_t, 4> state_;
  std::uint64_t seed_;
  std::uint64_t stream_id_;
};

}  // namespace selab

#endif  // SELAB_RNG_HPP
