#include "rswipt/experiments/sweep.hpp"

#include <limits>

#include "rswipt/experiments/csv.hpp"
#include "rswipt/experiments/trial_pool.hpp"
#include "rswipt/model/instance.hpp"
#include "rswipt/model/rng.hpp"
#include "rswipt/robust/extract.hpp"

namespace rswipt::experiments {

namespace {

TrialFailure classify(conic::SolveStatus s) {
  switch (s) {
    case conic::SolveStatus::Optimal: return TrialFailure::None;
    case conic::SolveStatus::NumericalLimit: return TrialFailure::NumericalLimit;
    default: return TrialFailure::Infeasible;
  }
}

struct PointSpec {
  double value;
  model::SystemParams params;
};

std::vector<PointSpec> point_specs(const ScenarioConfig& cfg, double eps) {
  std::vector<PointSpec> out;
  const double g = cfg.gamma_db.front(), e = cfg.eta_dbm.front();
  switch (cfg.sweep) {
    case SweepVar::Eta:
      for (double v : cfg.eta_dbm) out.push_back({v, cfg.params(cfg.N, eps, g, v)});
      break;
    case SweepVar::Gamma:
      for (double v : cfg.gamma_db) out.push_back({v, cfg.params(cfg.N, eps, v, e)});
      break;
    case SweepVar::Epsilon:
      for (double v : cfg.epsilon) out.push_back({v, cfg.params(cfg.N, v, g, e)});
      break;
    case SweepVar::N:
      for (int n : cfg.n_list) out.push_back({static_cast<double>(n), cfg.params(n, eps, g, e)});
      break;
  }
  return out;
}

}  // namespace

const char* to_string(TrialFailure f) {
  switch (f) {
    case TrialFailure::None: return "ok";
    case TrialFailure::NumericalLimit: return "numerical_limit";
    case TrialFailure::Infeasible: return "infeasible";
    case TrialFailure::ExtractionFailed: return "extraction_failed";
  }
  return "?";
}

std::uint64_t trial_seed(std::uint64_t master, int trial) {
  return model::derive_seed(master, static_cast<std::uint64_t>(trial));
}

TrialOutcome run_trial(const model::SystemParams& params, std::uint64_t seed, int num_rand,
                       const conic::SolverConfig& solver) {
  const model::ChannelSet ch = model::generate_instance(seed, params);
  const model::ChannelSet nominal_ch = ch.nominal();
  TrialOutcome out;

  const auto nominal = robust::solve_centralized(robust::assemble_nominal(params, nominal_ch), solver);
  const auto relaxed = ch.uncertain() ? robust::solve_centralized(robust::assemble_centralized(params, ch), solver)
                                      : nominal;
  const TrialFailure a = classify(nominal.status), b = classify(relaxed.status);
  if (a == TrialFailure::NumericalLimit || b == TrialFailure::NumericalLimit) out.failure = TrialFailure::NumericalLimit;
  else out.failure = a != TrialFailure::None ? a : b;
  if (!out.ok()) return out;
  out.nominal_power = nominal.objective;
  out.nominal_rank_one = nominal.all_rank_one();
  out.relaxation_power = relaxed.objective;
  out.relaxation_rank_one = relaxed.all_rank_one();

  const auto ex = robust::extract_beamformers(relaxed, params, ch, model::derive_seed(seed, 1), num_rand);
  out.randomized = ex.method == robust::ExtractionMethod::Randomized;
  if (!ex.feasible) {
    out.failure = TrialFailure::ExtractionFailed;
    return out;
  }
  out.robust_power = ex.total_power;
  return out;
}

std::vector<SweepCurve> run_sweep(const ScenarioConfig& cfg, int threads) {
  cfg.validate();
  std::vector<double> curve_eps = cfg.sweep == SweepVar::Epsilon ? std::vector<double>{0.0} : cfg.epsilon;
  std::vector<SweepCurve> curves;
  for (double eps : curve_eps) {
    const auto specs = point_specs(cfg, eps);
    const int n = static_cast<int>(specs.size()) * cfg.trials;
    const auto outcomes = run_trials<TrialOutcome>(n, threads, [&](int k) {
      const auto& spec = specs[static_cast<std::size_t>(k / cfg.trials)];
      return run_trial(spec.params, trial_seed(cfg.seed, k % cfg.trials), cfg.num_rand);
    });
    SweepCurve curve;
    curve.epsilon = eps;
    for (std::size_t p = 0; p < specs.size(); ++p) {
      SweepPoint pt;
      pt.value = specs[p].value;
      pt.trials.assign(outcomes.begin() + static_cast<long>(p) * cfg.trials,
                       outcomes.begin() + static_cast<long>(p + 1) * cfg.trials);
      curve.points.push_back(std::move(pt));
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

std::vector<SweepRecord> summarize(const ScenarioConfig& cfg, const SweepCurve& curve) {
  std::vector<SweepRecord> out;
  const char* schemes[] = {"robust", "relaxation", "nominal"};
  for (const auto& pt : curve.points) {
    for (int s = 0; s < 3; ++s) {
      SweepRecord r;
      r.sweep_var = to_string(cfg.sweep);
      r.value = pt.value;
      r.scheme = schemes[s];
      double sum = 0.0;
      int rank1 = 0;
      for (const auto& t : pt.trials) {
        if (!t.ok()) {
          ++r.trials_failed;
          continue;
        }
        ++r.trials_ok;
        sum += s == 0 ? t.robust_power : s == 1 ? t.relaxation_power : t.nominal_power;
        rank1 += s == 2 ? t.nominal_rank_one : t.relaxation_rank_one;
      }
      r.mean_power_mw = r.trials_ok ? sum / r.trials_ok : std::numeric_limits<double>::quiet_NaN();
      r.mean_power_dbm = model::mw_to_dbm(r.mean_power_mw);
      r.rank1_frac = r.trials_ok ? static_cast<double>(rank1) / r.trials_ok : std::numeric_limits<double>::quiet_NaN();
      out.push_back(std::move(r));
    }
  }
  return out;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << "sweep_var,value,scheme,mean_power_mw,mean_power_dbm,trials_ok,trials_failed,rank1_frac\n";
  for (const auto& r : records) {
    os << r.sweep_var << ',' << format_double(r.value) << ',' << r.scheme << ',' << format_double(r.mean_power_mw)
       << ',' << format_double(r.mean_power_dbm) << ',' << r.trials_ok << ',' << r.trials_failed << ','
       << format_double(r.rank1_frac) << '\n';
  }
}

std::string sweep_file_name(const ScenarioConfig& cfg, const SweepCurve& curve) {
  if (cfg.sweep == SweepVar::Epsilon) return "sweep_epsilon.csv";
  return std::string("sweep_") + to_string(cfg.sweep) + "_eps" + format_double(curve.epsilon) + ".csv";
}

int count_failures(const SweepCurve& curve, TrialFailure kind) {
  int n = 0;
  for (const auto& pt : curve.points)
    for (const auto& t : pt.trials) n += t.failure == kind;
  return n;
}

}  // namespace rswipt::experiments
