#include "rswipt/experiments/config.hpp"

#include <fstream>

#include "rswipt/error.hpp"

namespace rswipt::experiments {

namespace {

using model::Json;

const char* const kKeys[] = {"schema", "K", "N", "epsilon", "gamma_db", "eta_dbm", "n_list", "sigma_sq_dbm",
                             "delta_sq_dbm", "zeta", "trials", "num_rand", "sweep", "samples_per_trial",
                             "sampling", "admm", "seed", "max_failed_fraction"};

template <class T>
std::vector<T> list(const Json& j, const char* key, const std::vector<T>& fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (v.is_number()) return {v.get<T>()};
  if (!v.is_array() || v.empty()) throw ConfigError(std::string("'") + key + "' must be a number or a non-empty list");
  return v.get<std::vector<T>>();
}

}  // namespace

const char* to_string(SweepVar v) {
  switch (v) {
    case SweepVar::Eta: return "eta";
    case SweepVar::Gamma: return "gamma";
    case SweepVar::Epsilon: return "epsilon";
    case SweepVar::N: return "N";
  }
  return "?";
}

ScenarioConfig ScenarioConfig::from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (j.value("schema", std::string("v1")) != "v1") throw ConfigError("unsupported config schema (expected \"v1\")");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : kKeys) known = known || key == k;
    if (!known) throw ConfigError("unknown config key '" + key + "'");
  }
  ScenarioConfig c;
  try {
    c.K = j.value("K", c.K);
    c.N = j.value("N", c.N);
    c.epsilon = list(j, "epsilon", c.epsilon);
    c.gamma_db = list(j, "gamma_db", c.gamma_db);
    c.eta_dbm = list(j, "eta_dbm", c.eta_dbm);
    c.n_list = list(j, "n_list", c.n_list);
    c.sigma_sq_dbm = j.value("sigma_sq_dbm", c.sigma_sq_dbm);
    c.delta_sq_dbm = j.value("delta_sq_dbm", c.delta_sq_dbm);
    c.zeta = j.value("zeta", c.zeta);
    c.trials = j.value("trials", c.trials);
    c.num_rand = j.value("num_rand", c.num_rand);
    c.samples_per_trial = j.value("samples_per_trial", c.samples_per_trial);
    c.seed = j.value("seed", c.seed);
    c.max_failed_fraction = j.value("max_failed_fraction", c.max_failed_fraction);
    const std::string sweep = j.value("sweep", std::string("eta"));
    if (sweep == "eta") c.sweep = SweepVar::Eta;
    else if (sweep == "gamma") c.sweep = SweepVar::Gamma;
    else if (sweep == "epsilon") c.sweep = SweepVar::Epsilon;
    else if (sweep == "N") c.sweep = SweepVar::N;
    else throw ConfigError("'sweep' must be one of eta, gamma, epsilon, N");
    const std::string law = j.value("sampling", std::string("interior"));
    if (law == "interior") c.sampling = model::SamplingLaw::Interior;
    else if (law == "boundary") c.sampling = model::SamplingLaw::Boundary;
    else throw ConfigError("'sampling' must be interior or boundary");
    if (j.contains("admm")) {
      const Json& a = j.at("admm");
      if (!a.is_object()) throw ConfigError("'admm' must be an object");
      c.admm.c = a.value("c", c.admm.c);
      c.admm.max_iter = a.value("max_iter", c.admm.max_iter);
      c.admm.tol_residual = a.value("tol_residual", c.admm.tol_residual);
      c.admm.tol_power = a.value("tol_power", c.admm.tol_power);
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config type error: ") + e.what());
  }
  c.validate();
  return c;
}

Json ScenarioConfig::to_json() const {
  return Json{{"schema", "v1"},
              {"K", K},
              {"N", N},
              {"epsilon", epsilon},
              {"gamma_db", gamma_db},
              {"eta_dbm", eta_dbm},
              {"n_list", n_list},
              {"sigma_sq_dbm", sigma_sq_dbm},
              {"delta_sq_dbm", delta_sq_dbm},
              {"zeta", zeta},
              {"trials", trials},
              {"num_rand", num_rand},
              {"sweep", to_string(sweep)},
              {"samples_per_trial", samples_per_trial},
              {"sampling", sampling == model::SamplingLaw::Interior ? "interior" : "boundary"},
              {"admm", {{"c", admm.c}, {"max_iter", admm.max_iter}, {"tol_residual", admm.tol_residual},
                        {"tol_power", admm.tol_power}}},
              {"seed", seed},
              {"max_failed_fraction", max_failed_fraction}};
}

void ScenarioConfig::apply_paper_scale() {
  trials = 2000;
  num_rand = 500;
}

void ScenarioConfig::validate() const {
  if (K < 1 || N < 1) throw ConfigError("K and N must be >= 1");
  if (epsilon.empty() || gamma_db.empty() || eta_dbm.empty() || n_list.empty()) throw ConfigError("lists must be non-empty");
  for (double e : epsilon)
    if (!(e >= 0.0)) throw ConfigError("epsilon values must be >= 0");
  for (int n : n_list)
    if (n < 1) throw ConfigError("n_list values must be >= 1");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (num_rand < 1) throw ConfigError("num_rand must be >= 1");
  if (samples_per_trial < 1) throw ConfigError("samples_per_trial must be >= 1");
  if (!(zeta > 0.0 && zeta <= 1.0)) throw ConfigError("zeta must lie in (0, 1]");
  if (!(admm.c > 0.0) || admm.max_iter < 1 || !(admm.tol_residual > 0.0) || !(admm.tol_power > 0.0)) {
    throw ConfigError("admm settings must be positive");
  }
  if (!(max_failed_fraction >= 0.0 && max_failed_fraction <= 1.0)) throw ConfigError("max_failed_fraction must lie in [0, 1]");
}

model::SystemParams ScenarioConfig::params(int N_value, double epsilon_value, double gamma_db_value,
                                           double eta_dbm_value) const {
  try {
    return model::SystemParams::uniform(K, N_value, model::dbm_to_mw(sigma_sq_dbm), model::dbm_to_mw(delta_sq_dbm),
                                        zeta, model::db_to_ratio(gamma_db_value), model::dbm_to_mw(eta_dbm_value),
                                        epsilon_value);
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  model::Json j;
  try {
    j = model::Json::parse(in);
  } catch (const model::Json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return ScenarioConfig::from_json(j);
}

}  // namespace rswipt::experiments
