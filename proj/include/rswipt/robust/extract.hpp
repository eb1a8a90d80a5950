#pragma once

#include <cstdint>
#include <string>

#include "rswipt/model/evaluate.hpp"
#include "rswipt/robust/centralized.hpp"

namespace rswipt::robust {

enum class ExtractionMethod { EVD, Randomized };

const char* to_string(ExtractionMethod m);

struct ExtractionOptions {
  double alpha_max = 100.0;
  // Relative slack kept on both targets when choosing alpha and rho, so the
  // certified design clears the worst-case check despite rounding.
  double safety = 1e-9;
  double rank_threshold = kRankOneRatio;
};

struct ExtractionResult {
  model::Design design;
  ExtractionMethod method = ExtractionMethod::EVD;
  int candidates_tried = 0;
  bool feasible = false;
  double total_power = 0.0;
  double alpha = 1.0;  // power scale applied to the chosen directions
  model::WorstCaseReport report;
  std::string diagnostics;
};

/// Rank-one design from a relaxed solution. Rank-one W_i are decomposed
/// directly; otherwise num_rand Gaussian candidate direction sets (plus the
/// principal eigenvectors) are scaled up until the worst case holds and the
/// cheapest one is kept. Every returned feasible design is certified with
/// worst_case_report.
ExtractionResult extract_beamformers(const RelaxedSolution& rs, const SystemParams& params, const ChannelSet& ch,
                                     std::uint64_t seed, int num_rand, const ExtractionOptions& opt = {});

}  // namespace rswipt::robust
