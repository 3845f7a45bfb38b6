#include "ppdepth/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace ppdepth {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline std::uint32_t mul_hi(std::uint32_t a, std::uint32_t b) {
  return static_cast<std::uint32_t>(
      (static_cast<std::uint64_t>(a) * b) >> 32);
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream) : cursor_(4) {
  key_[0] = static_cast<std::uint32_t>(seed);
  key_[1] = static_cast<std::uint32_t>(seed >> 32);
  counter_[0] = 0;
  counter_[1] = 0;
  counter_[2] = static_cast<std::uint32_t>(stream);
  counter_[3] = static_cast<std::uint32_t>(stream >> 32);
}

void SeededRng::refill() {
  std::uint32_t x0 = counter_[0];
  std::uint32_t x1 = counter_[1];
  std::uint32_t x2 = counter_[2];
  std::uint32_t x3 = counter_[3];
  std::uint32_t k0 = key_[0];
  std::uint32_t k1 = key_[1];
  for (int round = 0; round < 10; ++round) {
    const std::uint32_t hi0 = mul_hi(kPhiloxM0, x0);
    const std::uint32_t lo0 = kPhiloxM0 * x0;
    const std::uint32_t hi1 = mul_hi(kPhiloxM1, x2);
    const std::uint32_t lo1 = kPhiloxM1 * x2;
    const std::uint32_t y0 = hi1 ^ x1 ^ k0;
    const std::uint32_t y1 = lo1;
    const std::uint32_t y2 = hi0 ^ x3 ^ k1;
    const std::uint32_t y3 = lo0;
    x0 = y0;
    x1 = y1;
    x2 = y2;
    x3 = y3;
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  block_[0] = x0;
  block_[1] = x1;
  block_[2] = x2;
  block_[3] = x3;
  cursor_ = 0;
  // 64-bit block counter in words 0..1; words 2..3 hold the stream id.
  if (++counter_[0] == 0) ++counter_[1];
}

std::uint32_t SeededRng::next_u32() {
  if (cursor_ == 4) refill();
  return block_[cursor_++];
}

std::uint64_t SeededRng::next_u64() {
  const std::uint64_t hi = next_u32();
  const std::uint64_t lo = next_u32();
  return (hi << 32) | lo;
}

double SeededRng::uniform01() {
  // 53 random bits, centered in the cell: lands strictly inside (0, 1).
  const std::uint64_t bits = next_u64() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double SeededRng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

double SeededRng::exponential(double rate) {
  if (!(rate > 0.0)) {
    throw std::invalid_argument("exponential rate must be positive");
  }
  return -std::log(uniform01()) / rate;
}

std::uint64_t SeededRng::poisson(double mean) {
  if (!(mean >= 0.0)) {
    throw std::invalid_argument("poisson mean must be nonnegative");
  }
  std::uint64_t count = 0;
  double elapsed = exponential(1.0);
  while (elapsed <= mean) {
    ++count;
    elapsed += exponential(1.0);
  }
  return count;
}

}  // namespace ppdepth
