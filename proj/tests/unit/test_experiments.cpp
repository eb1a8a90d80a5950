#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rswipt/experiments/cdf.hpp"
#include "rswipt/experiments/convergence.hpp"
#include "rswipt/experiments/csv.hpp"
#include "rswipt/experiments/sweep.hpp"
#include "rswipt/experiments/trial_pool.hpp"

using namespace rswipt;
using namespace rswipt::experiments;

namespace {

ScenarioConfig small_config() {
  ScenarioConfig c;
  c.trials = 4;
  c.num_rand = 10;
  c.epsilon = {0.05};
  c.eta_dbm = {-10.0, 0.0};
  c.samples_per_trial = 20;
  return c;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("config parsing") {
  const auto c = ScenarioConfig::from_json(model::Json::parse(R"({"K": 3, "epsilon": 0.1, "sweep": "gamma"})"));
  CHECK(c.K == 3);
  CHECK(c.epsilon == std::vector<double>{0.1});
  CHECK(c.sweep == SweepVar::Gamma);
  const auto back = ScenarioConfig::from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());

  const char* bad[] = {R"([1, 2])",
                       R"({"schema": "v2"})",
                       R"({"trails": 10})",
                       R"({"K": "two"})",
                       R"({"K": 0})",
                       R"({"epsilon": -0.1})",
                       R"({"epsilon": []})",
                       R"({"sweep": "rho"})",
                       R"({"sampling": "edge"})",
                       R"({"zeta": 1.5})",
                       R"({"admm": {"c": 0}})"};
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(ScenarioConfig::from_json(model::Json::parse(text)), ConfigError);
  }
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
  auto paper = ScenarioConfig{};
  paper.apply_paper_scale();
  CHECK(paper.trials == 2000);
  CHECK(paper.num_rand == 500);
}

TEST_CASE("numbers are written shortest round-trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-300) == "1e-300");
  CHECK(format_double(-2.0) == "-2");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(INFINITY) == "inf");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("trial pool returns results in index order and propagates errors") {
  const std::function<int(int)> sq = [](int k) { return k * k; };
  const auto a = run_trials<int>(50, 1, sq), b = run_trials<int>(50, 7, sq);
  CHECK(a == b);
  CHECK(a[7] == 49);
  const std::function<int(int)> boom = [](int k) -> int {
    if (k == 3) throw std::runtime_error("boom");
    return k;
  };
  CHECK_THROWS_AS(run_trials<int>(10, 3, boom), std::runtime_error);
}

TEST_CASE("sweep output: schema, accounting and thread independence") {
  const auto cfg = small_config();
  const auto one = run_sweep(cfg, 1), three = run_sweep(cfg, 3);
  REQUIRE(one.size() == 1);
  std::ostringstream a, b;
  write_sweep_csv(a, summarize(cfg, one[0]));
  write_sweep_csv(b, summarize(cfg, three[0]));
  CHECK(a.str() == b.str());
  CHECK(first_line(a.str()) == "sweep_var,value,scheme,mean_power_mw,mean_power_dbm,trials_ok,trials_failed,rank1_frac");
  const auto recs = summarize(cfg, one[0]);
  CHECK(recs.size() == 2 * 3);
  for (const auto& r : recs) {
    CHECK(r.sweep_var == "eta");
    CHECK(r.trials_ok + r.trials_failed == cfg.trials);
    CHECK((r.rank1_frac >= 0.0 && r.rank1_frac <= 1.0));
    if (r.trials_ok > 0) CHECK(r.mean_power_dbm == doctest::Approx(model::mw_to_dbm(r.mean_power_mw)));
  }
  CHECK(sweep_file_name(cfg, one[0]) == "sweep_eta_eps0.05.csv");
  for (const auto& pt : one[0].points)
    for (const auto& t : pt.trials)
      if (t.ok()) {
        CHECK(t.nominal_power <= t.relaxation_power * (1 + 1e-6));
        CHECK(t.relaxation_power <= t.robust_power * (1 + 1e-6));
      }
}

TEST_CASE("without uncertainty the robust scheme is the nominal one") {
  ScenarioConfig cfg = small_config();
  const auto p = cfg.params(4, 0.0, 4.0, -5.0);
  const auto t = run_trial(p, trial_seed(cfg.seed, 0), cfg.num_rand);
  REQUIRE(t.ok());
  CHECK(t.relaxation_power == t.nominal_power);
}

TEST_CASE("cdf output") {
  auto cfg = small_config();
  cfg.trials = 2;
  cfg.epsilon = {0.1};
  const auto r = run_cdf(cfg, 2);
  CHECK(r.trials_ok + r.trials_failed == cfg.trials);
  CHECK(r.samples.size() == static_cast<std::size_t>(r.trials_ok * cfg.samples_per_trial * 2 * cfg.K));
  REQUIRE(r.summary.size() == 2);
  CHECK(r.summary[0].scheme == "robust");
  CHECK(r.summary[0].satisfied == r.summary[0].records);
  std::ostringstream os;
  write_cdf_csv(os, r);
  CHECK(first_line(os.str()) == "trial,sample,scheme,rx,sinr_db,eh_dbm");
  cfg.epsilon = {0.0};
  CHECK_THROWS_AS(run_cdf(cfg, 1), ConfigError);
}

TEST_CASE("convergence output") {
  auto cfg = small_config();
  cfg.trials = 1;
  const auto trials = run_convergence(cfg, 1);
  REQUIRE(trials.size() == 1);
  CHECK(trials[0].reference_ok);
  CHECK(trials[0].iterations_to_1pct > 0);
  CHECK(median_iterations(trials) == trials[0].iterations_to_1pct);
  std::ostringstream os, sum;
  write_convergence_csv(os, trials);
  CHECK(first_line(os.str()) == "trial,q,P,deltaP,residual,messages,millis");
  write_convergence_summary(sum, trials);
  CHECK(sum.str().find("median") != std::string::npos);
}
