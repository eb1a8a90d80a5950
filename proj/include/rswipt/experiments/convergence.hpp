#pragma once

#include <ostream>
#include <vector>

#include "rswipt/admm/runner.hpp"
#include "rswipt/experiments/config.hpp"

namespace rswipt::experiments {

struct ConvergenceTrial {
  int trial = 0;
  bool reference_ok = false;  // centralized solve succeeded
  double reference_power = 0.0;
  admm::AdmmResult admm;
  int iterations_to_1pct = -1;  // rounds until deltaP stays <= 0.01
};

// ADMM per trial on the first epsilon / gamma / eta of the config, measured
// against the centralized optimum of the same instance.
std::vector<ConvergenceTrial> run_convergence(const ScenarioConfig& cfg, int threads,
                                              admm::Executor executor = admm::Executor::Sequential,
                                              bool record_timing = false);

// trial,q,P,deltaP,residual,messages,millis
void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceTrial>& trials);
// One row per trial plus a final median row.
void write_convergence_summary(std::ostream& os, const std::vector<ConvergenceTrial>& trials);
// Median of iterations_to_1pct over trials that reached the level (NaN if none).
double median_iterations(const std::vector<ConvergenceTrial>& trials);

}  // namespace rswipt::experiments
