#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace rswipt::model {

/// Philox4x32-10 counter-based generator. The 64-bit key is the seed and the
/// upper half of the 128-bit counter selects a substream, so independent
/// (trial, link) streams can be opened in any order with identical output.
class Philox {
 public:
  using result_type = std::uint64_t;

  explicit Philox(std::uint64_t seed, std::uint64_t substream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();

  // One raw block for the given counter; exposed for known-answer tests.
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key);

 private:
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> ctr_;
  std::array<std::uint32_t, 4> buf_{};
  int next_ = 4;
};

// SplitMix64 finalizer; used to derive child seeds from a master seed.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Distribution helpers with fixed algorithms so output does not depend on the
// standard library implementation.
double uniform01(Philox& g);          // (0, 1), 53-bit resolution
double standard_normal(Philox& g);    // Box-Muller, cosine branch
std::complex<double> complex_normal(Philox& g);  // CN(0, 1)

}  // namespace rswipt::model
