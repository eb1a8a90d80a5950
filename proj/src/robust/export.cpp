#include "rswipt/robust/export.hpp"

#include <cmath>

namespace rswipt::robust {

namespace {

model::Json numbers(const std::vector<double>& v) {
  model::Json out = model::Json::array();
  for (double x : v) out.push_back(std::isfinite(x) ? model::Json(x) : model::Json(nullptr));
  return out;
}

}  // namespace

model::Json relaxed_to_json(const RelaxedSolution& rs) {
  model::Json W = model::Json::array();
  for (std::size_t i = 0; i < rs.W.size(); ++i) {
    const auto& r = rs.ranks[i];
    W.push_back({{"trace", rs.W[i].trace()},
                 {"eigenvalues", std::vector<double>(r.eigenvalues.data(), r.eigenvalues.data() + r.eigenvalues.size())},
                 {"rank_ratio", r.ratio},
                 {"rank_one", r.rank_one}});
  }
  const auto& s = rs.solver;
  return {{"status", conic::to_string(rs.status)},
          {"objective_mw", rs.objective},
          {"W", std::move(W)},
          {"rho", rs.rho},
          {"nu", numbers(rs.nu)},
          {"lambda", numbers(rs.lambda)},
          {"mu", numbers(rs.mu)},
          {"tbar", numbers(rs.tbar)},
          {"tlow", numbers(rs.tlow)},
          {"solver",
           {{"iterations", s.iterations},
            {"primal_objective", s.primal_objective},
            {"dual_objective", s.dual_objective},
            {"primal_residual", s.primal_residual},
            {"dual_residual", s.dual_residual},
            {"relative_gap", s.relative_gap}}}};
}

model::Json extraction_to_json(const ExtractionResult& ex) {
  std::vector<double> sinr, eh;
  for (const auto& r : ex.report.rx) {
    sinr.push_back(r.worst_sinr);
    eh.push_back(r.worst_eh);
  }
  return {{"method", to_string(ex.method)},
          {"feasible", ex.feasible},
          {"candidates_tried", ex.candidates_tried},
          {"alpha", ex.alpha},
          {"total_power_mw", ex.total_power},
          {"design", model::design_to_json(ex.design)},
          {"worst_sinr", sinr},
          {"worst_eh_mw", eh},
          {"min_margin", ex.report.min_margin()},
          {"diagnostics", ex.diagnostics}};
}

}  // namespace rswipt::robust
