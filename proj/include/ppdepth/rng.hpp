#pragma once

#include <cstdint>

// Counter-based random number generation. The generator is Philox4x32-10
// (Salmon et al.), fixed here rather than delegating to the platform default
// so that seeded experiments produce identical streams everywhere. A stream
// id selects one of 2^64 independent substreams for the same seed, which is
// how per-thread and per-experiment generators are split.

namespace ppdepth {

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  // Uniform on the open interval (0, 1); never returns an endpoint, so
  // log(u) is always finite.
  double uniform01();

  // Uniform on [lo, hi).
  double uniform(double lo, double hi);

  // Exponential with the given rate, via inversion.
  double exponential(double rate);

  // Poisson count by accumulating unit-exponential arrivals until the mean
  // is exceeded; exact, O(mean + 1) draws.
  std::uint64_t poisson(double mean);

 private:
  void refill();

  std::uint32_t key_[2];
  std::uint32_t counter_[4];
  std::uint32_t block_[4];
  int cursor_;
};

}  // namespace ppdepth
