#include "rswipt/experiments/convergence.hpp"

#include <algorithm>
#include <limits>

#include "rswipt/experiments/csv.hpp"
#include "rswipt/experiments/sweep.hpp"
#include "rswipt/experiments/trial_pool.hpp"
#include "rswipt/model/instance.hpp"
#include "rswipt/robust/centralized.hpp"

namespace rswipt::experiments {

std::vector<ConvergenceTrial> run_convergence(const ScenarioConfig& cfg, int threads, admm::Executor executor,
                                              bool record_timing) {
  cfg.validate();
  const auto params = cfg.params(cfg.N, cfg.epsilon.front(), cfg.gamma_db.front(), cfg.eta_dbm.front());
  admm::AdmmConfig ac;
  ac.c = cfg.admm.c;
  ac.max_iter = cfg.admm.max_iter;
  ac.tol_residual = cfg.admm.tol_residual;
  ac.tol_power = cfg.admm.tol_power;
  ac.executor = executor;
  ac.record_timing = record_timing;

  return run_trials<ConvergenceTrial>(cfg.trials, threads, [&](int t) {
    ConvergenceTrial out;
    out.trial = t;
    const auto ch = model::generate_instance(trial_seed(cfg.seed, t), params);
    const auto rs = ch.uncertain() ? robust::solve_centralized(robust::assemble_centralized(params, ch))
                                   : robust::solve_centralized(robust::assemble_nominal(params, ch));
    if (!rs.ok()) return out;
    out.reference_ok = true;
    out.reference_power = rs.objective;
    out.admm = admm::run_admm(params, ch, ac, rs.objective);
    out.iterations_to_1pct = admm::iterations_to(out.admm.trace, 0.01);
    return out;
  });
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceTrial>& trials) {
  os << "trial,q,P,deltaP,residual,messages,millis\n";
  for (const auto& t : trials) {
    for (const auto& r : t.admm.trace) {
      os << t.trial << ',' << r.q << ',' << format_double(r.power) << ',' << format_double(r.delta_power) << ','
         << format_double(r.residual) << ',' << r.messages << ',' << format_double(r.millis) << '\n';
    }
  }
}

double median_iterations(const std::vector<ConvergenceTrial>& trials) {
  std::vector<int> v;
  for (const auto& t : trials)
    if (t.reference_ok && t.iterations_to_1pct >= 0) v.push_back(t.iterations_to_1pct);
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void write_convergence_summary(std::ostream& os, const std::vector<ConvergenceTrial>& trials) {
  os << "trial,status,rounds,iterations_to_0.01,final_deltaP,reference_power_mw\n";
  for (const auto& t : trials) {
    if (!t.reference_ok) {
      os << t.trial << ",reference_failed,0,-1,nan,nan\n";
      continue;
    }
    const double last = t.admm.trace.empty() ? std::numeric_limits<double>::quiet_NaN()
                                             : t.admm.trace.back().delta_power;
    os << t.trial << ',' << admm::to_string(t.admm.status) << ',' << t.admm.iterations() << ','
       << t.iterations_to_1pct << ',' << format_double(last) << ',' << format_double(t.reference_power) << '\n';
  }
  os << "median,,," << format_double(median_iterations(trials)) << ",,\n";
}

}  // namespace rswipt::experiments
