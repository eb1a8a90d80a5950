#include "rswipt/admm/agent.hpp"

#include "rswipt/admm/consensus.hpp"
#include "rswipt/error.hpp"
#include "rswipt/robust/assemble.hpp"

namespace rswipt::admm {

using robust::AffineMatrix;
using robust::Multiplier;

namespace {

AffineMatrix var1(int v, double coeff = 1.0) { return AffineMatrix::scalar_variable(v, coeff); }
AffineMatrix const1(double v) { return AffineMatrix::scalar(conic::Complex(v)); }

}  // namespace

ChannelSet local_view(const ChannelSet& ch, int i) {
  const int K = ch.K(), N = ch.N();
  std::vector<conic::CVector> h;
  std::vector<HermitianMatrix> shapes;
  for (int r = 0; r < K; ++r) {
    for (int j = 0; j < K; ++j) {
      const bool own = j == i;
      h.push_back(own ? ch.h_hat(r, j) : conic::CVector::Zero(N));
      if (ch.uncertain()) shapes.push_back(own ? ch.shape(r, j) : HermitianMatrix::identity(N));
    }
  }
  return ChannelSet(K, N, std::move(h), std::move(shapes));
}

LocalSolution solve_local(const SystemParams& params, const ChannelSet& csi, int i, const Vector& t_now,
                          const Vector& beta_i, double c, const conic::SolverConfig& cfg) {
  if (!(c > 0.0)) throw ValidationError("solve_local: penalty must be positive");
  const int K = csi.K(), N = csi.N();
  const int L = local_size(K);
  if (t_now.size() != public_size(K) || beta_i.size() != L) throw ValidationError("solve_local: wrong vector length");
  const bool robust_mode = csi.uncertain();
  const bool coupled = K > 1;

  conic::ConicProblem pb;
  const int w0 = pb.num_vars;
  for (int t = 0; t < N * N; ++t) pb.add_variable("W", t < N ? 1.0 : 0.0);
  const int rho = pb.add_variable("rho");
  Multiplier nu;
  std::vector<Multiplier> lambda(K), mu(K);
  if (robust_mode) {
    nu = {pb.add_variable("nu"), robust::multiplier_scale(csi, i, i)};
    for (int j = 0; j < K; ++j)
      if (j != i) lambda[j] = {pb.add_variable("lambda"), robust::multiplier_scale(csi, j, i)};
    for (int j = 0; j < K; ++j) mu[j] = {pb.add_variable("mu"), robust::multiplier_scale(csi, j, i)};
  }
  int t0 = -1, s = -1;
  if (coupled) {
    t0 = pb.num_vars;
    for (int k = 0; k < L; ++k) pb.add_variable("t", -beta_i(k));
  }
  const int tlow_self = pb.add_variable("tlow_self");
  if (coupled) s = pb.add_variable("s", 0.5 * c);

  auto add = [&](const AffineMatrix& m) { pb.add_block(robust::to_lmi_block(m)); };
  const AffineMatrix W = robust::hermitian_variable(w0, N);
  const AffineMatrix interference = coupled ? var1(t0 + local_sum_index(K, false)) : const1(0.0);
  const AffineMatrix harvested = (coupled ? var1(t0 + local_sum_index(K, true)) : const1(0.0)) + var1(tlow_self);

  if (robust_mode) add(robust::sinr_block(params, csi, i, W, rho, interference, nu));
  else add(robust::sinr_block_nominal(params, csi, i, W, rho, interference));
  add(robust::eh_block(params, i, rho, harvested));
  for (int j = 0; j < K; ++j) {
    const int tlow = j == i ? tlow_self : t0 + local_cross_index(K, i, j, true);
    if (robust_mode) {
      if (j != i) add(robust::interference_block(csi, j, i, W, t0 + local_cross_index(K, i, j, false), lambda[j]));
      add(robust::energy_block(csi, j, i, W, tlow, mu[j]));
    } else {
      const AffineMatrix q = robust::nominal_quadratic(csi, j, i, W);
      if (j != i) add(var1(t0 + local_cross_index(K, i, j, false)) - q);
      add(q - var1(tlow));
    }
  }
  add(W);
  pb.add_lower_bound(rho, 0.0);
  pb.add_upper_bound(rho, 1.0);
  if (robust_mode) {
    pb.add_lower_bound(nu.var, 0.0);
    for (const auto& m : lambda)
      if (m.var >= 0) pb.add_lower_bound(m.var, 0.0);
    for (const auto& m : mu) pb.add_lower_bound(m.var, 0.0);
  }
  pb.add_lower_bound(tlow_self, 0.0);
  if (coupled) {
    for (int k = 0; k < L; ++k) pb.add_lower_bound(t0 + k, 0.0);
    // s >= ||d||^2 with d = E_i t_now - t_i, as [[I, d], [d^T, s]] >= 0.
    const Vector target = select(K, i, t_now);
    conic::LmiBlockSpec epi(L + 1);
    epi.constant.topLeftCorner(L, L).setIdentity();
    epi.constant.col(L).head(L) = target;
    epi.constant.row(L).head(L) = target.transpose();
    for (int k = 0; k < L; ++k) {
      conic::Matrix f = conic::Matrix::Zero(L + 1, L + 1);
      f(k, L) = f(L, k) = -1.0;
      epi.add_term(t0 + k, f);
    }
    conic::Matrix fs = conic::Matrix::Zero(L + 1, L + 1);
    fs(L, L) = 1.0;
    epi.add_term(s, fs);
    pb.add_block(std::move(epi));
  }

  const auto sol = conic::solve_sdp(pb, cfg);
  LocalSolution out;
  out.status = sol.status;
  out.iterations = sol.iterations;
  out.t = Vector::Zero(L);
  if (sol.y.size() != pb.num_vars) return out;
  out.W = robust::hermitian_from_coords(sol.y, w0, N);
  out.rho = sol.y(rho);
  out.tlow_self = sol.y(tlow_self);
  out.power = out.W.trace();
  if (coupled) {
    out.t = sol.y.segment(t0, L);
    out.proximal = sol.y(s);
  }
  return out;
}

Agent::Agent(int id, const SystemParams& params, ChannelSet csi, double c, conic::SolverConfig cfg)
    : id_(id), K_(csi.K()), c_(c), params_(params), csi_(std::move(csi)), cfg_(cfg) {
  t_ = Vector::Zero(public_size(K_));
  betas_.assign(K_, Vector::Zero(local_size(K_)));
  last_.t = Vector::Zero(local_size(K_));
}

void Agent::local_step() { last_ = solve_local(params_, csi_, id_, t_, betas_[id_], c_, cfg_); }

Message Agent::outgoing(std::uint64_t round) const { return {round, static_cast<std::uint64_t>(id_), last_.t}; }

void Agent::absorb(const std::vector<Message>& round_messages) {
  std::vector<Vector> local;
  for (const auto& m : round_messages) local.push_back(m.values);
  t_ = consensus_update(K_, local, betas_, c_);
  dual_update(K_, betas_, t_, local, c_);
}

}  // namespace rswipt::admm
