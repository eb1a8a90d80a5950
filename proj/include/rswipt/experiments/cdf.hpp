#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "rswipt/experiments/config.hpp"

namespace rswipt::experiments {

struct CdfSample {
  int trial = 0;
  int sample = 0;
  const char* scheme = "";
  int rx = 0;
  double sinr_db = 0.0;
  double eh_dbm = 0.0;
};

struct CdfSchemeSummary {
  std::string scheme;
  long records = 0;    // (sample, receiver) pairs
  long satisfied = 0;  // records meeting both targets
  long samples = 0;    // channel realizations
  long samples_satisfied = 0;  // realizations where every receiver meets both targets
};

struct CdfResult {
  std::vector<CdfSample> samples;  // ordered by trial, sample, scheme, rx
  std::vector<CdfSchemeSummary> summary;  // robust, nominal
  int trials_ok = 0;
  int trials_failed = 0;
  int numerical_limit = 0;
};

// Robust and nominal designs per trial (first epsilon / gamma / eta of the
// config), evaluated on samples_per_trial shared error draws. Targets count
// as met within a relative 1e-9.
CdfResult run_cdf(const ScenarioConfig& cfg, int threads);
void write_cdf_csv(std::ostream& os, const CdfResult& r);
void write_cdf_summary(std::ostream& os, const CdfResult& r);

}  // namespace rswipt::experiments
