#include "rswipt/experiments/cdf.hpp"

#include <optional>

#include "rswipt/error.hpp"
#include "rswipt/experiments/csv.hpp"
#include "rswipt/experiments/sweep.hpp"
#include "rswipt/experiments/trial_pool.hpp"
#include "rswipt/model/evaluate.hpp"
#include "rswipt/model/rng.hpp"
#include "rswipt/robust/extract.hpp"

namespace rswipt::experiments {

namespace {

constexpr double kTargetSlack = 1e-9;
const char* const kSchemes[] = {"robust", "nominal"};

struct TrialSamples {
  bool ok = false;
  bool numerical_limit = false;
  std::vector<CdfSample> samples;
};

std::optional<model::Design> design(const robust::RelaxedSolution& rs, const model::SystemParams& p,
                                    const model::ChannelSet& ch, std::uint64_t seed, int num_rand) {
  if (!rs.ok()) return std::nullopt;
  auto ex = robust::extract_beamformers(rs, p, ch, seed, num_rand);
  if (!ex.feasible) return std::nullopt;
  return ex.design;
}

}  // namespace

CdfResult run_cdf(const ScenarioConfig& cfg, int threads) {
  cfg.validate();
  const double eps = cfg.epsilon.front();
  if (!(eps > 0.0)) throw ConfigError("cdf needs epsilon > 0");
  const auto params = cfg.params(cfg.N, eps, cfg.gamma_db.front(), cfg.eta_dbm.front());
  const int K = params.K;

  const auto trials = run_trials<TrialSamples>(cfg.trials, threads, [&](int t) {
    TrialSamples out;
    const auto seed = trial_seed(cfg.seed, t);
    const auto ch = model::generate_instance(seed, params);
    const auto nominal_ch = ch.nominal();
    const auto rr = robust::solve_centralized(robust::assemble_centralized(params, ch));
    const auto rn = robust::solve_centralized(robust::assemble_nominal(params, nominal_ch));
    out.numerical_limit = rr.status == conic::SolveStatus::NumericalLimit ||
                          rn.status == conic::SolveStatus::NumericalLimit;
    const auto dr = design(rr, params, ch, model::derive_seed(seed, 1), cfg.num_rand);
    const auto dn = design(rn, params, nominal_ch, model::derive_seed(seed, 1), cfg.num_rand);
    if (!dr || !dn) return out;
    out.ok = true;
    const auto sample_root = model::derive_seed(seed, 2);
    for (int s = 0; s < cfg.samples_per_trial; ++s) {
      const auto errors = model::sample_uncertainty(ch, model::derive_seed(sample_root, s), cfg.sampling);
      for (int k = 0; k < 2; ++k) {
        const auto q = model::evaluate_nominal(params, ch, k == 0 ? *dr : *dn, &errors);
        for (int i = 0; i < K; ++i) {
          out.samples.push_back({t, s, kSchemes[k], i, model::ratio_to_db(q[i].sinr), model::mw_to_dbm(q[i].eh)});
        }
      }
    }
    return out;
  });

  CdfResult res;
  res.summary = {{kSchemes[0]}, {kSchemes[1]}};
  const double gamma_db = cfg.gamma_db.front(), eta_dbm = cfg.eta_dbm.front();
  const double sinr_floor = model::ratio_to_db(model::db_to_ratio(gamma_db) * (1.0 - kTargetSlack));
  const double eh_floor = model::mw_to_dbm(model::dbm_to_mw(eta_dbm) * (1.0 - kTargetSlack));
  for (const auto& tr : trials) {
    if (!tr.ok) {
      ++res.trials_failed;
      res.numerical_limit += tr.numerical_limit;
      continue;
    }
    ++res.trials_ok;
    // Records come in blocks of K receivers per (sample, scheme).
    for (std::size_t b = 0; b < tr.samples.size(); b += static_cast<std::size_t>(K)) {
      auto& sum = res.summary[tr.samples[b].scheme == kSchemes[0] ? 0 : 1];
      bool all = true;
      for (int i = 0; i < K; ++i) {
        const auto& s = tr.samples[b + static_cast<std::size_t>(i)];
        const bool met = s.sinr_db >= sinr_floor && s.eh_dbm >= eh_floor;
        sum.records += 1;
        sum.satisfied += met;
        all = all && met;
      }
      sum.samples += 1;
      sum.samples_satisfied += all;
    }
    res.samples.insert(res.samples.end(), tr.samples.begin(), tr.samples.end());
  }
  return res;
}

void write_cdf_csv(std::ostream& os, const CdfResult& r) {
  os << "trial,sample,scheme,rx,sinr_db,eh_dbm\n";
  for (const auto& s : r.samples) {
    os << s.trial << ',' << s.sample << ',' << s.scheme << ',' << s.rx << ',' << format_double(s.sinr_db) << ','
       << format_double(s.eh_dbm) << '\n';
  }
}

void write_cdf_summary(std::ostream& os, const CdfResult& r) {
  os << "scheme,records,records_satisfied,record_fraction,samples,samples_satisfied,sample_fraction,trials_ok,"
        "trials_failed\n";
  for (const auto& s : r.summary) {
    const double rf = s.records ? static_cast<double>(s.satisfied) / static_cast<double>(s.records) : 0.0;
    const double sf = s.samples ? static_cast<double>(s.samples_satisfied) / static_cast<double>(s.samples) : 0.0;
    os << s.scheme << ',' << s.records << ',' << s.satisfied << ',' << format_double(rf) << ',' << s.samples << ','
       << s.samples_satisfied << ',' << format_double(sf) << ',' << r.trials_ok << ',' << r.trials_failed << '\n';
  }
}

}  // namespace rswipt::experiments
