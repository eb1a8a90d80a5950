#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rswipt/error.hpp"
#include "rswipt/experiments/cdf.hpp"
#include "rswipt/experiments/convergence.hpp"
#include "rswipt/experiments/sweep.hpp"
#include "rswipt/model/instance.hpp"
#include "rswipt/model/rng.hpp"
#include "rswipt/robust/export.hpp"
#include "selftest.hpp"

namespace fs = std::filesystem;
using namespace rswipt;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolverBudget = 3;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  int threads = 1;
  bool paper_scale = false;
};

experiments::ScenarioConfig load(const Common& c) {
  experiments::ScenarioConfig cfg;
  if (!c.config.empty()) cfg = experiments::load_config(c.config);
  if (c.paper_scale) cfg.apply_paper_scale();
  if (c.seed) cfg.seed = *c.seed;
  if (c.threads < 1) throw experiments::ConfigError("--threads must be >= 1");
  return cfg;
}

std::ofstream open_out(const Common& c, const std::string& name) {
  fs::create_directories(c.out_dir);
  const fs::path path = fs::path(c.out_dir) / name;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  std::cout << "wrote " << path.string() << '\n';
  return os;
}

int budget_exit(double failed, double total, double allowed) {
  if (total > 0 && failed / total > allowed) {
    std::cerr << "solver numerical limits on " << failed << " of " << total << " trials exceed the configured budget\n";
    return kExitSolverBudget;
  }
  return 0;
}

int cmd_sweep(const Common& c) {
  const auto cfg = load(c);
  const auto curves = experiments::run_sweep(cfg, c.threads);
  double failed = 0, total = 0;
  for (const auto& curve : curves) {
    auto os = open_out(c, experiments::sweep_file_name(cfg, curve));
    experiments::write_sweep_csv(os, experiments::summarize(cfg, curve));
    failed += experiments::count_failures(curve, experiments::TrialFailure::NumericalLimit);
    for (const auto& pt : curve.points) total += static_cast<double>(pt.trials.size());
  }
  return budget_exit(failed, total, cfg.max_failed_fraction);
}

int cmd_cdf(const Common& c) {
  const auto cfg = load(c);
  const auto res = experiments::run_cdf(cfg, c.threads);
  {
    auto os = open_out(c, "cdf_samples.csv");
    experiments::write_cdf_csv(os, res);
  }
  auto os = open_out(c, "cdf_summary.csv");
  experiments::write_cdf_summary(os, res);
  experiments::write_cdf_summary(std::cout, res);
  return budget_exit(res.numerical_limit, cfg.trials, cfg.max_failed_fraction);
}

int cmd_converge(const Common& c, bool timing, bool parallel_agents) {
  const auto cfg = load(c);
  const auto trials = experiments::run_convergence(
      cfg, c.threads, parallel_agents ? admm::Executor::Parallel : admm::Executor::Sequential, timing);
  {
    auto os = open_out(c, "converge_traces.csv");
    experiments::write_convergence_csv(os, trials);
  }
  auto os = open_out(c, "converge_summary.csv");
  experiments::write_convergence_summary(os, trials);
  std::cout << "median iterations to deltaP <= 0.01: " << experiments::median_iterations(trials) << '\n';
  int failed = 0;
  for (const auto& t : trials) failed += !t.reference_ok || t.admm.status == admm::AdmmStatus::LocalFailure;
  return budget_exit(failed, cfg.trials, cfg.max_failed_fraction);
}

int cmd_solve_one(const Common& c, const std::string& instance_path) {
  const auto cfg = load(c);
  model::SystemParams params;
  model::ChannelSet ch;
  if (!instance_path.empty()) {
    std::ifstream in(instance_path);
    if (!in) throw experiments::ConfigError("cannot open instance file '" + instance_path + "'");
    try {
      std::tie(params, ch) = model::instance_from_json(model::Json::parse(in));
    } catch (const model::Json::exception& e) {
      throw experiments::ConfigError(std::string("instance parse error: ") + e.what());
    }
  } else {
    params = cfg.params(cfg.N, cfg.epsilon.front(), cfg.gamma_db.front(), cfg.eta_dbm.front());
    ch = model::generate_instance(experiments::trial_seed(cfg.seed, 0), params);
  }
  model::Json out{{"instance", model::instance_to_json(params, ch)}};
  bool limit = false;
  auto solve = [&](const char* name, const model::ChannelSet& set, bool robust_mode) {
    const auto ap = robust_mode ? robust::assemble_centralized(params, set) : robust::assemble_nominal(params, set);
    const auto rs = robust::solve_centralized(ap);
    limit = limit || rs.status == conic::SolveStatus::NumericalLimit;
    model::Json j{{"relaxation", robust::relaxed_to_json(rs)}, {"num_vars", ap.map.num_vars},
                  {"num_blocks", ap.problem.blocks.size()}};
    if (rs.ok()) {
      const auto ex = robust::extract_beamformers(rs, params, set, model::derive_seed(cfg.seed, 1), cfg.num_rand);
      j["extraction"] = robust::extraction_to_json(ex);
    }
    out[name] = std::move(j);
  };
  if (ch.uncertain()) solve("robust", ch, true);
  solve("nominal", ch.nominal(), false);
  auto os = open_out(c, "solution.json");
  os << out.dump(2) << '\n';
  return limit ? kExitSolverBudget : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust SWIPT beamforming and power splitting: experiments and single solves"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "Scenario config (JSON, schema v1)");
    sub->add_option("--seed", common.seed, "Master seed (overrides the config)");
    sub->add_option("--out-dir", common.out_dir, "Output directory");
    sub->add_option("--threads", common.threads, "Worker threads for trials");
    sub->add_flag("--paper-scale", common.paper_scale, "2000 trials and 500 randomizations");
  };
  auto* sweep = app.add_subcommand("sweep", "Average power versus eta, gamma, epsilon or N");
  add_common(sweep);
  auto* cdf = app.add_subcommand("cdf", "Achieved SINR / EH under sampled channel errors");
  add_common(cdf);
  auto* converge = app.add_subcommand("converge", "Decentralized (ADMM) convergence traces");
  add_common(converge);
  bool timing = false, parallel_agents = false;
  converge->add_flag("--timing", timing, "Record wall-clock time per round (non-reproducible)");
  converge->add_flag("--parallel-agents", parallel_agents, "Run the agents of a round on separate threads");
  auto* solve_one = app.add_subcommand("solve-one", "Solve one instance and export the solution as JSON");
  add_common(solve_one);
  std::string instance_path;
  solve_one->add_option("--instance", instance_path, "Instance JSON (default: generated from config and seed)");
  auto* selftest = app.add_subcommand("selftest", "Oracle cross-checks on small instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sweep) return cmd_sweep(common);
    if (*cdf) return cmd_cdf(common);
    if (*converge) return cmd_converge(common, timing, parallel_agents);
    if (*solve_one) return cmd_solve_one(common, instance_path);
    if (*selftest) return tools::run_selftest(std::cout) == 0 ? 0 : 1;
  } catch (const experiments::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
