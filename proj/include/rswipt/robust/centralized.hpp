#pragma once

#include <vector>

#include "rswipt/robust/assemble.hpp"

namespace rswipt::robust {

inline constexpr double kRankOneRatio = 1e-4;

struct RankReport {
  Vector eigenvalues;  // descending
  double ratio = 0.0;  // lambda_2 / lambda_1 (0 for N = 1 or W = 0)
  bool rank_one = false;
};

RankReport rank_report(const HermitianMatrix& W, double threshold = kRankOneRatio);

struct RelaxedSolution {
  conic::SolveStatus status = conic::SolveStatus::NumericalLimit;
  std::vector<HermitianMatrix> W;
  std::vector<double> rho;
  std::vector<double> nu;                 // K (NaN in nominal mode)
  std::vector<double> lambda, mu;         // K*K row-major, NaN where absent
  std::vector<double> tbar, tlow;         // K*K row-major, NaN where absent
  double objective = 0.0;                 // sum_i tr(W_i)
  conic::ConicSolution solver;
  std::vector<RankReport> ranks;

  bool ok() const { return status == conic::SolveStatus::Optimal; }
  bool all_rank_one() const;
  double rank_one_fraction() const;
};

// Reads the solution of an assembled problem back into the model quantities.
RelaxedSolution decode_solution(const AssembledProblem& ap, const conic::ConicSolution& sol,
                                double rank_threshold = kRankOneRatio);

// Solver failures are reported through `status`, never thrown.
RelaxedSolution solve_centralized(const AssembledProblem& ap, const conic::SolverConfig& cfg = {});

}  // namespace rswipt::robust
