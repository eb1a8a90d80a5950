#pragma once

#include <cstdint>
#include <vector>

#include "rswipt/admm/bus.hpp"
#include "rswipt/conic/sdp.hpp"
#include "rswipt/model/system.hpp"

namespace rswipt::admm {

using conic::HermitianMatrix;
using model::ChannelSet;
using model::SystemParams;

// The channel knowledge of transmitter i: the links (j, i) for every j.
// Links the agent cannot observe are replaced by zero estimates (and unit
// shapes), so any accidental use of them shows up as a wrong answer.
ChannelSet local_view(const ChannelSet& ch, int i);

struct LocalSolution {
  conic::SolveStatus status = conic::SolveStatus::NumericalLimit;
  HermitianMatrix W;
  double rho = 0.0;
  Vector t;                 // local vector, length 2K
  double tlow_self = 0.0;   // private slack tlow(i, i)
  double power = 0.0;       // tr(W_i)
  double proximal = 0.0;    // epigraph value s >= ||E_i t_now - t_i||^2
  int iterations = 0;
};

/// Local step of agent i: minimize tr(W_i) + (c/2) ||E_i t_now - t_i||^2 -
/// beta_i^T t_i over the constraints that involve W_i. For K = 1 there is
/// nothing to agree on and the local vector stays at zero.
LocalSolution solve_local(const SystemParams& params, const ChannelSet& csi, int i, const Vector& t_now,
                          const Vector& beta_i, double c, const conic::SolverConfig& cfg = {});

/// One transmitter with its replicated copy of the public vector and of all
/// K duals.
class Agent {
 public:
  Agent(int id, const SystemParams& params, ChannelSet csi, double c, conic::SolverConfig cfg = {});

  int id() const { return id_; }
  void local_step();
  Message outgoing(std::uint64_t round) const;
  // Consensus and dual updates from the full set of broadcasts of a round.
  void absorb(const std::vector<Message>& round_messages);

  const LocalSolution& last() const { return last_; }
  const Vector& public_vector() const { return t_; }
  const std::vector<Vector>& duals() const { return betas_; }

 private:
  int id_;
  int K_;
  double c_;
  SystemParams params_;
  ChannelSet csi_;
  conic::SolverConfig cfg_;
  Vector t_;
  std::vector<Vector> betas_;
  LocalSolution last_;
};

}  // namespace rswipt::admm
