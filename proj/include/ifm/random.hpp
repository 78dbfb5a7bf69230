#pragma once

#include <cstdint>

namespace ifm {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Counter-based generator: the k-th draw of stream (seed, stream) is
/// splitmix64 applied to a key derived from all three. Any draw can be
/// recomputed independently, so sharded runs reproduce serial runs bit for bit.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept;

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Exponential with the given rate, by inversion.
  double exponential(double rate) noexcept;

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace ifm
