#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rswipt/model/instance.hpp"
#include "rswipt/model/serialize.hpp"

namespace rswipt::experiments {

// Malformed or inconsistent configuration; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SweepVar { Eta, Gamma, Epsilon, N };

const char* to_string(SweepVar v);

struct AdmmSettings {
  double c = 1.0;
  int max_iter = 300;
  double tol_residual = 1e-5;
  double tol_power = 1e-5;
};

/// Scenario description, schema "v1". Desk-scale defaults; paper scale
/// raises trials and randomizations.
struct ScenarioConfig {
  int K = 2;
  int N = 4;
  std::vector<double> epsilon{0.05, 0.1};
  std::vector<double> gamma_db{4.0};
  std::vector<double> eta_dbm{-5.0};
  std::vector<int> n_list{4, 8};
  double sigma_sq_dbm = -70.0;
  double delta_sq_dbm = -50.0;
  double zeta = 0.25;
  int trials = 200;
  int num_rand = 100;
  SweepVar sweep = SweepVar::Eta;
  int samples_per_trial = 200;
  model::SamplingLaw sampling = model::SamplingLaw::Interior;
  AdmmSettings admm;
  std::uint64_t seed = 1;
  // Largest tolerated fraction of trials lost to solver numerical limits.
  double max_failed_fraction = 0.1;

  static ScenarioConfig from_json(const model::Json& j);
  model::Json to_json() const;
  void apply_paper_scale();
  void validate() const;

  model::SystemParams params(int N_value, double epsilon_value, double gamma_db_value, double eta_dbm_value) const;
};

ScenarioConfig load_config(const std::string& path);

}  // namespace rswipt::experiments
