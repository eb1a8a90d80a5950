#include "rswipt/robust/extract.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <Eigen/Eigenvalues>

#include "rswipt/error.hpp"
#include "rswipt/model/rng.hpp"

namespace rswipt::robust {

namespace {

// Per-receiver worst-case signal, interference and harvested power of unit
// scale; every term scales linearly with the common power factor alpha.
struct Budget {
  double signal = 0.0;
  double interference = 0.0;
  double harvested = 0.0;
};

struct Fit {
  double alpha = 0.0;
  std::vector<double> rho;
};

std::vector<Budget> budgets(const ChannelSet& ch, const std::vector<CVector>& w) {
  const int K = ch.K();
  std::vector<Budget> out(K);
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j < K; ++j) {
      const auto ext = model::link_extremes_rank_one(ch, i, j, w[j]);
      out[i].harvested += ext.min;
      if (j == i) out[i].signal = ext.min;
      else out[i].interference += ext.max;
    }
  }
  return out;
}

// Feasible rho interval of receiver i at scale alpha, empty when lo > hi.
std::pair<double, double> rho_interval(const SystemParams& p, int i, const Budget& b, double alpha, double safety) {
  const double gamma = p.gamma[i] * (1.0 + safety);
  const double eta = p.eta[i] * (1.0 + safety);
  const double room = alpha * b.signal / gamma - alpha * b.interference - p.sigma_sq[i];
  const double inf = std::numeric_limits<double>::infinity();
  if (!(room > 0.0)) return {inf, -inf};
  const double lo = p.delta_sq[i] / room;
  const double hi = 1.0 - eta / (p.zeta[i] * (alpha * b.harvested + p.sigma_sq[i]));
  return {std::max(lo, 0.0), std::min(hi, 1.0)};
}

bool feasible_at(const SystemParams& p, const std::vector<Budget>& b, double alpha, double safety) {
  for (int i = 0; i < p.K; ++i) {
    const auto [lo, hi] = rho_interval(p, i, b[i], alpha, safety);
    if (lo > hi) return false;
  }
  return true;
}

// Smallest alpha in [1, alpha_max] at which every receiver admits a rho; the
// intervals only widen as alpha grows, so bisection applies.
std::optional<Fit> fit_scale(const SystemParams& p, const std::vector<Budget>& b, const std::vector<double>& rho_pref,
                             const ExtractionOptions& opt) {
  double alpha = 1.0;
  if (!feasible_at(p, b, 1.0, opt.safety)) {
    if (!feasible_at(p, b, opt.alpha_max, opt.safety)) return std::nullopt;
    double lo = 1.0, hi = opt.alpha_max;
    for (int it = 0; it < 100 && hi - lo > 1e-13 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (feasible_at(p, b, mid, opt.safety) ? hi : lo) = mid;
    }
    alpha = hi;
  }
  Fit f{alpha, {}};
  for (int i = 0; i < p.K; ++i) {
    const auto [lo, hi] = rho_interval(p, i, b[i], alpha, opt.safety);
    const double pref = i < static_cast<int>(rho_pref.size()) ? rho_pref[i] : 0.5 * (lo + hi);
    f.rho.push_back(std::clamp(pref, lo, hi));
  }
  return f;
}

struct Candidate {
  std::vector<CVector> directions;  // unit norm
  std::vector<double> power;        // per-user power before scaling
};

Candidate principal(const RelaxedSolution& rs) {
  Candidate c;
  for (const auto& W : rs.W) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(W.matrix());
    c.directions.push_back(es.eigenvectors().col(W.dim() - 1));
    c.power.push_back(std::max(0.0, W.trace()));
  }
  return c;
}

Candidate gaussian(const RelaxedSolution& rs, model::Philox& g) {
  Candidate c;
  for (const auto& W : rs.W) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(W.matrix());
    const int n = W.dim();
    CVector z(n);
    for (int k = 0; k < n; ++k) z(k) = model::complex_normal(g);
    const Vector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    CVector w = es.eigenvectors() * (root.cast<Complex>().asDiagonal() * z);
    const double norm = w.norm();
    if (norm > 0.0) w /= norm;
    else w = es.eigenvectors().col(n - 1);
    c.directions.push_back(std::move(w));
    c.power.push_back(std::max(0.0, W.trace()));
  }
  return c;
}

std::vector<CVector> scaled(const Candidate& c, double alpha) {
  std::vector<CVector> w;
  for (std::size_t i = 0; i < c.directions.size(); ++i) w.push_back(c.directions[i] * std::sqrt(alpha * c.power[i]));
  return w;
}

}  // namespace

const char* to_string(ExtractionMethod m) { return m == ExtractionMethod::EVD ? "evd" : "randomized"; }

ExtractionResult extract_beamformers(const RelaxedSolution& rs, const SystemParams& params, const ChannelSet& ch,
                                     std::uint64_t seed, int num_rand, const ExtractionOptions& opt) {
  if (num_rand <= 0) throw ValidationError("extract_beamformers: num_rand must be positive");
  if (!rs.ok()) throw ValidationError("extract_beamformers: relaxed solution is not optimal");
  if (static_cast<int>(rs.W.size()) != ch.K() || params.K != ch.K()) {
    throw ValidationError("extract_beamformers: dimension mismatch");
  }
  bool rank_one = true;
  for (const auto& W : rs.W) rank_one = rank_one && rank_report(W, opt.rank_threshold).rank_one;

  ExtractionResult res;
  std::optional<Fit> best;
  Candidate best_cand;
  auto consider = [&](const Candidate& c) {
    ++res.candidates_tried;
    const auto b = budgets(ch, scaled(c, 1.0));
    auto f = fit_scale(params, b, rs.rho, opt);
    if (!f) return;
    double cost = 0.0;
    for (double p : c.power) cost += f->alpha * p;
    double best_cost = std::numeric_limits<double>::infinity();
    if (best) {
      best_cost = 0.0;
      for (double p : best_cand.power) best_cost += best->alpha * p;
    }
    if (cost < best_cost) {
      best = std::move(f);
      best_cand = c;
    }
  };

  consider(principal(rs));
  if (rank_one && best) {
    res.method = ExtractionMethod::EVD;
  } else {
    res.method = ExtractionMethod::Randomized;
    model::Philox g(seed);
    for (int r = 0; r < num_rand; ++r) consider(gaussian(rs, g));
  }

  if (!best) {
    res.diagnostics = "no candidate met the worst-case targets within alpha_max";
    res.design.w = scaled(principal(rs), 1.0);
    res.design.rho = rs.rho;
    for (double& r : res.design.rho) r = std::clamp(r, 0.0, 1.0);
    res.total_power = res.design.total_power();
    res.report = model::worst_case_report(params, ch, res.design);
    return res;
  }
  res.alpha = best->alpha;
  res.design.w = scaled(best_cand, best->alpha);
  res.design.rho = best->rho;
  res.total_power = res.design.total_power();
  res.report = model::worst_case_report(params, ch, res.design);
  res.feasible = res.report.satisfied(1e-6);
  if (!res.feasible) res.diagnostics = "worst-case check rejected the scaled candidate";
  return res;
}

}  // namespace rswipt::robust
