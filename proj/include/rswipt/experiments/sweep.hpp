#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "rswipt/conic/sdp.hpp"
#include "rswipt/experiments/config.hpp"

namespace rswipt::experiments {

enum class TrialFailure { None, NumericalLimit, Infeasible, ExtractionFailed };

const char* to_string(TrialFailure f);

/// One channel realization solved by every scheme. A trial counts as ok only
/// when all schemes succeed, so the means of all schemes cover the same
/// channel draws.
struct TrialOutcome {
  TrialFailure failure = TrialFailure::None;
  double relaxation_power = 0.0;  // robust relaxation optimum (lower bound)
  double robust_power = 0.0;      // extracted rank-one robust design
  double nominal_power = 0.0;     // non-robust relaxation optimum
  bool relaxation_rank_one = false;
  bool nominal_rank_one = false;
  bool randomized = false;

  bool ok() const { return failure == TrialFailure::None; }
};

// Channel draw from trial_seed; randomization uses a derived stream. With
// epsilon = 0 the robust scheme coincides with the nominal one.
TrialOutcome run_trial(const model::SystemParams& params, std::uint64_t trial_seed, int num_rand,
                       const conic::SolverConfig& solver = {});

// Seed of trial k under a master seed; shared by every sweep point so
// comparisons along a sweep are paired.
std::uint64_t trial_seed(std::uint64_t master, int trial);

struct SweepPoint {
  double value = 0.0;
  std::vector<TrialOutcome> trials;
};

struct SweepCurve {
  double epsilon = 0.0;  // fixed epsilon of the curve (sweeps over epsilon use a single curve)
  std::vector<SweepPoint> points;
};

struct SweepRecord {
  std::string sweep_var;
  double value = 0.0;
  std::string scheme;
  double mean_power_mw = 0.0;
  double mean_power_dbm = 0.0;
  int trials_ok = 0;
  int trials_failed = 0;
  double rank1_frac = 0.0;
};

std::vector<SweepCurve> run_sweep(const ScenarioConfig& cfg, int threads);
std::vector<SweepRecord> summarize(const ScenarioConfig& cfg, const SweepCurve& curve);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records);
// File name of a curve's CSV inside the output directory.
std::string sweep_file_name(const ScenarioConfig& cfg, const SweepCurve& curve);
int count_failures(const SweepCurve& curve, TrialFailure kind);

}  // namespace rswipt::experiments
