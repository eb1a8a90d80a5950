#include "rswipt/model/rng.hpp"

#include <cmath>
#include <numbers>

namespace rswipt::model {

namespace {
constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
}  // namespace

std::array<std::uint32_t, 4> Philox::block(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

Philox::Philox(std::uint64_t seed, std::uint64_t substream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      ctr_{0u, 0u, static_cast<std::uint32_t>(substream), static_cast<std::uint32_t>(substream >> 32)} {}

Philox::result_type Philox::operator()() {
  if (next_ >= 4) {
    buf_ = block(ctr_, key_);
    if (++ctr_[0] == 0) ++ctr_[1];
    next_ = 0;
  }
  const std::uint64_t lo = buf_[next_];
  const std::uint64_t hi = buf_[next_ + 1];
  next_ += 2;
  return (hi << 32) | lo;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) { return mix64(mix64(master) ^ mix64(index + 1)); }

double uniform01(Philox& g) {
  // (k + 0.5) / 2^53 never returns 0 or 1.
  return (static_cast<double>(g() >> 11) + 0.5) * 0x1.0p-53;
}

double standard_normal(Philox& g) {
  const double u1 = uniform01(g);
  const double u2 = uniform01(g);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::complex<double> complex_normal(Philox& g) {
  // |z|^2 ~ Exp(1) and a uniform phase give CN(0, 1).
  const double u1 = uniform01(g);
  const double u2 = uniform01(g);
  return std::polar(std::sqrt(-std::log(u1)), 2.0 * std::numbers::pi * u2);
}

}  // namespace rswipt::model
