#include "rswipt/robust/centralized.hpp"

#include <cmath>
#include <limits>

namespace rswipt::robust {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double read(const Vector& y, int var, double scale = 1.0) { return var >= 0 ? scale * y(var) : kNaN; }

}  // namespace

RankReport rank_report(const HermitianMatrix& W, double threshold) {
  RankReport r;
  r.eigenvalues = W.eigenvalues().reverse();
  const double l1 = r.eigenvalues(0);
  const double l2 = r.eigenvalues.size() > 1 ? std::max(0.0, r.eigenvalues(1)) : 0.0;
  r.ratio = l1 > 0.0 ? l2 / l1 : 0.0;
  r.rank_one = r.ratio <= threshold;
  return r;
}

bool RelaxedSolution::all_rank_one() const {
  for (const auto& r : ranks)
    if (!r.rank_one) return false;
  return true;
}

double RelaxedSolution::rank_one_fraction() const {
  if (ranks.empty()) return 0.0;
  int n = 0;
  for (const auto& r : ranks) n += r.rank_one;
  return static_cast<double>(n) / static_cast<double>(ranks.size());
}

RelaxedSolution decode_solution(const AssembledProblem& ap, const conic::ConicSolution& sol, double rank_threshold) {
  const auto& map = ap.map;
  const int K = map.K;
  RelaxedSolution rs;
  rs.status = sol.status;
  rs.solver = sol;
  if (sol.y.size() != map.num_vars) return rs;
  const Vector& y = sol.y;
  for (int i = 0; i < K; ++i) {
    rs.W.push_back(hermitian_from_coords(y, map.w_first[i], map.N));
    rs.rho.push_back(y(map.rho[i]));
    rs.nu.push_back(read(y, map.nu[i].var, map.nu[i].scale));
    rs.objective += rs.W.back().trace();
    rs.ranks.push_back(rank_report(rs.W.back(), rank_threshold));
  }
  for (int k = 0; k < K * K; ++k) {
    rs.lambda.push_back(read(y, map.lambda[k].var, map.lambda[k].scale));
    rs.mu.push_back(read(y, map.mu[k].var, map.mu[k].scale));
    rs.tbar.push_back(read(y, map.tbar[k]));
    rs.tlow.push_back(read(y, map.tlow[k]));
  }
  return rs;
}

RelaxedSolution solve_centralized(const AssembledProblem& ap, const conic::SolverConfig& cfg) {
  return decode_solution(ap, conic::solve_sdp(ap.problem, cfg));
}

}  // namespace rswipt::robust
