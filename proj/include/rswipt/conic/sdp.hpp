#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rswipt/conic/hermitian.hpp"

namespace rswipt::conic {

/// One real-symmetric linear matrix inequality F(y) = F0 + sum_k y_k F_k >= 0.
struct LmiBlockSpec {
  int dim = 0;
  Matrix constant;
  std::vector<std::pair<int, Matrix>> coeffs;

  LmiBlockSpec() = default;
  explicit LmiBlockSpec(int n) : dim(n), constant(Matrix::Zero(n, n)) {}

  // Accumulates into an existing coefficient for the same variable.
  void add_term(int var, const Matrix& f);
  Matrix evaluate(const Vector& y) const;
};

struct VariableMeta {
  std::string role;
  std::optional<double> lower;
  std::optional<double> upper;
};

/// minimize c^T y  subject to  F_b(y) >= 0 for every block b.
struct ConicProblem {
  int num_vars = 0;
  Vector objective;
  std::vector<LmiBlockSpec> blocks;
  std::vector<VariableMeta> var_meta;

  int add_variable(std::string role, double cost = 0.0);
  void add_block(LmiBlockSpec block);
  // Simple bounds are realized as 1x1 blocks.
  void add_lower_bound(int var, double lb);
  void add_upper_bound(int var, double ub);

  // Throws ValidationError on malformed data.
  void validate() const;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, NumericalLimit };

const char* to_string(SolveStatus s);

struct SolverConfig {
  double gap_tol = 1e-7;
  double feas_tol = 1e-7;
  int max_iter = 200;
  // Fraction of the distance to the cone boundary taken per step.
  double step_fraction = 0.98;
  // Divergence thresholds used by the infeasibility / unboundedness tests.
  double divergence_level = 1e8;
  double stagnation_residual = 1e-5;
  int divergence_window = 5;
  bool verbose = false;
};

struct ConicSolution {
  SolveStatus status = SolveStatus::NumericalLimit;
  Vector y;
  // One multiplier matrix Z_b >= 0 per block; F_k . Z = c_k at optimality.
  std::vector<Matrix> block_duals;
  double primal_objective = 0.0;  // c^T y
  double dual_objective = 0.0;    // -sum_b F0_b . Z_b
  int iterations = 0;
  double primal_residual = 0.0;  // relative violation of F(y) = S
  double dual_residual = 0.0;    // relative violation of F_k . Z = c_k
  double relative_gap = 0.0;
};

/// Infeasible-start primal-dual path-following method (HKM direction,
/// Mehrotra predictor-corrector) on dense blocks. Single threaded; owns all
/// of its workspace.
ConicSolution solve_sdp(const ConicProblem& problem, const SolverConfig& cfg = {});

// Smallest eigenvalue over all blocks of F(y).
double min_block_eigenvalue(const ConicProblem& problem, const Vector& y);

}  // namespace rswipt::conic
