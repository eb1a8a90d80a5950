#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "rswipt/admm/agent.hpp"

namespace rswipt::admm {

enum class Executor { Sequential, Parallel };

struct AdmmConfig {
  double c = 1.0;
  int max_iter = 300;
  double tol_residual = 1e-5;
  double tol_power = 1e-5;
  Executor executor = Executor::Sequential;
  // Wall-clock column of the trace; off by default so traces are reproducible.
  bool record_timing = false;
  conic::SolverConfig solver;
};

enum class AdmmStatus { Converged, NotConverged, LocalFailure };

const char* to_string(AdmmStatus s);

struct IterationRecord {
  int q = 0;
  double power = 0.0;        // P(q) = sum_i tr(W_i)
  double delta_power = 0.0;  // |P(q) - P*| / P*, NaN without a reference
  double residual = 0.0;     // max_i ||E_i t - t_i||_inf after the round
  double dual_change = 0.0;  // max_i ||beta_i(q+1) - beta_i(q)||_inf
  std::uint64_t messages = 0;  // cumulative
  std::uint64_t bytes = 0;     // cumulative
  double millis = 0.0;         // cumulative, 0 unless timing is recorded
};

struct AdmmResult {
  AdmmStatus status = AdmmStatus::NotConverged;
  std::vector<HermitianMatrix> W;
  std::vector<double> rho;
  double objective = 0.0;
  Vector t;
  std::vector<Vector> betas;
  std::vector<IterationRecord> trace;
  int iterations() const { return static_cast<int>(trace.size()); }
};

/// Decentralized solve of the relaxation: every round runs the K local steps,
/// broadcasts the local vectors and lets each agent apply the same consensus
/// and dual updates to its replicated state. Replicas are compared bit for bit
/// after every round (std::logic_error on mismatch).
AdmmResult run_admm(const SystemParams& params, const ChannelSet& ch, const AdmmConfig& cfg = {},
                    std::optional<double> reference_power = std::nullopt);

// Columns q,P,deltaP,residual,messages,millis.
void write_trace_csv(std::ostream& os, const std::vector<IterationRecord>& trace);

// Number of rounds after which deltaP stays <= level, or -1.
int iterations_to(const std::vector<IterationRecord>& trace, double level);

}  // namespace rswipt::admm
