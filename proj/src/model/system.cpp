#include "rswipt/model/system.hpp"

#include <sstream>

#include "rswipt/error.hpp"

namespace rswipt::model {

SystemParams SystemParams::uniform(int K, int N, double sigma_sq_mw, double delta_sq_mw, double zeta, double gamma,
                                   double eta_mw, double epsilon) {
  SystemParams p;
  p.K = K;
  p.N = N;
  p.sigma_sq.assign(K, sigma_sq_mw);
  p.delta_sq.assign(K, delta_sq_mw);
  p.zeta.assign(K, zeta);
  p.gamma.assign(K, gamma);
  p.eta.assign(K, eta_mw);
  p.epsilon = epsilon;
  p.validate();
  return p;
}

void SystemParams::validate() const {
  if (K < 1 || N < 1) throw ValidationError("SystemParams: K and N must be >= 1");
  const auto k = static_cast<std::size_t>(K);
  if (sigma_sq.size() != k || delta_sq.size() != k || zeta.size() != k || gamma.size() != k || eta.size() != k) {
    throw ValidationError("SystemParams: per-receiver vectors must have length K");
  }
  for (std::size_t i = 0; i < k; ++i) {
    std::ostringstream os;
    os << "SystemParams receiver " << i << ": ";
    if (!(sigma_sq[i] > 0.0) || !(delta_sq[i] > 0.0)) throw ValidationError(os.str() + "noise powers must be > 0");
    if (!(zeta[i] > 0.0 && zeta[i] <= 1.0)) throw ValidationError(os.str() + "zeta must lie in (0, 1]");
    if (!(gamma[i] > 0.0)) throw ValidationError(os.str() + "gamma must be > 0");
    if (!(eta[i] >= 0.0)) throw ValidationError(os.str() + "eta must be >= 0");
  }
  if (!(epsilon >= 0.0)) throw ValidationError("SystemParams: epsilon must be >= 0");
}

ChannelSet::ChannelSet(int K, int N, std::vector<CVector> h_hat, std::vector<HermitianMatrix> shapes)
    : K_(K), N_(N), h_(std::move(h_hat)), shapes_(std::move(shapes)) {
  if (K < 1 || N < 1) throw ValidationError("ChannelSet: K and N must be >= 1");
  if (h_.size() != static_cast<std::size_t>(K * K)) throw ValidationError("ChannelSet: expected K*K channel vectors");
  for (const auto& h : h_) {
    if (h.size() != N) throw ValidationError("ChannelSet: channel vector length != N");
  }
  if (shapes_.empty()) return;
  if (shapes_.size() != h_.size()) throw ValidationError("ChannelSet: expected K*K shape matrices");
  maps_.reserve(shapes_.size());
  for (const auto& b : shapes_) {
    if (b.dim() != N) throw ValidationError("ChannelSet: shape matrix dimension != N");
    const auto ev = b.eigenvalues();
    if (!(ev(0) > 0.0)) throw ValidationError("ChannelSet: shape matrix must be positive definite");
    maps_.push_back(conic::pd_inverse_sqrt(b));
    shape_lmax_.push_back(ev(ev.size() - 1));
  }
}

ChannelSet ChannelSet::with_epsilon(int K, int N, std::vector<CVector> h_hat, double epsilon) {
  if (!(epsilon >= 0.0)) throw ValidationError("ChannelSet: epsilon must be >= 0");
  if (epsilon == 0.0) {
    ChannelSet cs(K, N, std::move(h_hat), {});
    cs.epsilon_ = 0.0;
    return cs;
  }
  std::vector<HermitianMatrix> shapes(static_cast<std::size_t>(K * K), HermitianMatrix::identity(N, 1.0 / (epsilon * epsilon)));
  ChannelSet cs(K, N, std::move(h_hat), std::move(shapes));
  cs.epsilon_ = epsilon;
  return cs;
}

ChannelSet ChannelSet::nominal() const { return with_epsilon(K_, N_, h_, 0.0); }

ChannelSet ChannelSet::with_uncertainty(double epsilon) const { return with_epsilon(K_, N_, h_, epsilon); }

double Design::total_power() const {
  double p = 0.0;
  for (const auto& v : w) p += v.squaredNorm();
  return p;
}

void Design::validate(int K, int N) const {
  if (w.size() != static_cast<std::size_t>(K) || rho.size() != static_cast<std::size_t>(K)) {
    throw ValidationError("Design: expected K beamformers and K splitting ratios");
  }
  for (int i = 0; i < K; ++i) {
    if (w[i].size() != N) throw ValidationError("Design: beamformer length != N");
    if (!w[i].allFinite()) throw ValidationError("Design: non-finite beamformer");
    if (!(rho[i] >= 0.0 && rho[i] <= 1.0)) throw ValidationError("Design: rho must lie in [0, 1]");
  }
}

}  // namespace rswipt::model
