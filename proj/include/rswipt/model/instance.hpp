#pragma once

#include <cstdint>

#include "rswipt/model/system.hpp"

namespace rswipt::model {

// h_hat(i, j) entries i.i.d. CN(0, 1); B = eps^-2 I (absent when eps = 0).
// Each link draws from its own substream of `seed`.
ChannelSet generate_instance(std::uint64_t seed, const SystemParams& params);

enum class SamplingLaw {
  Interior,  // uniform over the solid ellipsoid
  Boundary,  // uniform over its surface
};

// One error vector per link, e = B^{-1/2} u with u uniform in (or on) the unit
// ball of C^N viewed as R^{2N}. Requires an uncertain channel set.
Perturbations sample_uncertainty(const ChannelSet& ch, std::uint64_t seed, SamplingLaw law = SamplingLaw::Interior);

}  // namespace rswipt::model
