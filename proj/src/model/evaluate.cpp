#include "rswipt/model/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rswipt/conic/trs.hpp"
#include "rswipt/error.hpp"

namespace rswipt::model {

namespace {

double sinr_value(double signal, double interference, double sigma_sq, double delta_sq, double rho) {
  if (rho <= 0.0) return 0.0;
  return signal / (interference + sigma_sq + delta_sq / rho);
}

double eh_value(double received, double sigma_sq, double zeta, double rho) {
  return zeta * (1.0 - rho) * (received + sigma_sq);
}

double relative_margin(double value, double target) {
  if (target <= 0.0) return std::numeric_limits<double>::infinity();
  return value / target - 1.0;
}

}  // namespace

std::vector<LinkQuality> evaluate_nominal(const SystemParams& params, const ChannelSet& ch, const Design& d,
                                          const Perturbations* errors) {
  const int K = ch.K(), N = ch.N();
  if (params.K != K || params.N != N) throw ValidationError("evaluate_nominal: params and channels disagree on K/N");
  d.validate(K, N);
  if (errors && errors->size() != static_cast<std::size_t>(K * K)) {
    throw ValidationError("evaluate_nominal: expected K*K error vectors");
  }
  std::vector<LinkQuality> out(K);
  for (int i = 0; i < K; ++i) {
    double signal = 0.0, interference = 0.0;
    for (int j = 0; j < K; ++j) {
      CVector h = ch.h_hat(i, j);
      if (errors) {
        const CVector& e = (*errors)[i * K + j];
        if (e.size() != N) throw ValidationError("evaluate_nominal: error vector length != N");
        h += e;
      }
      const double power = std::norm(h.dot(d.w[j]));
      (j == i ? signal : interference) += power;
    }
    out[i].sinr = sinr_value(signal, interference, params.sigma_sq[i], params.delta_sq[i], d.rho[i]);
    out[i].eh = eh_value(signal + interference, params.sigma_sq[i], params.zeta[i], d.rho[i]);
  }
  return out;
}

QuadraticExtremes link_extremes(const ChannelSet& ch, int i, int j, const HermitianMatrix& W) {
  const CVector& h = ch.h_hat(i, j);
  if (W.dim() != ch.N()) throw ValidationError("link_extremes: W dimension != N");
  QuadraticExtremes out;
  const double nominal = W.quadratic_form(h);
  if (!ch.uncertain()) {
    out.min = out.max = nominal;
    out.argmin = out.argmax = CVector::Zero(ch.N());
    return out;
  }
  const CMatrix& map = ch.ellipsoid_map(i, j).matrix();
  conic::TrsProblem p;
  p.M = map * W.matrix() * map;
  p.M = (0.5 * (p.M + p.M.adjoint())).eval();
  p.m = map * (W.matrix() * h);
  p.m0 = nominal;
  p.sense = conic::Sense::Minimize;
  const auto lo = conic::trs_extremize(p);
  p.sense = conic::Sense::Maximize;
  const auto hi = conic::trs_extremize(p);
  out.min = std::max(0.0, lo.value);
  out.max = hi.value;
  out.argmin = map * lo.u;
  out.argmax = map * hi.u;
  return out;
}

QuadraticExtremes link_extremes_rank_one(const ChannelSet& ch, int i, int j, const CVector& w) {
  const Complex a = ch.h_hat(i, j).dot(w);
  QuadraticExtremes out;
  if (!ch.uncertain()) {
    out.min = out.max = std::norm(a);
    out.argmin = out.argmax = CVector::Zero(ch.N());
    return out;
  }
  const CMatrix& map = ch.ellipsoid_map(i, j).matrix();
  const CVector bw = map * w;  // B^{-1/2} w
  const double r = bw.norm();
  const double mag = std::abs(a);
  out.min = std::pow(std::max(0.0, mag - r), 2);
  out.max = std::pow(mag + r, 2);
  // e = B^{-1/2} u with u = s * conj(phase) * bw / r gives e^H w = s * phase * r,
  // i.e. the error term aligned (s > 0) or anti-aligned (s < 0) with h_hat^H w.
  const Complex phase = mag > 0.0 ? a / mag : Complex(1.0);
  out.argmax = r > 0.0 ? CVector(map * (bw * (std::conj(phase) / r))) : CVector::Zero(ch.N());
  const double t = r > 0.0 ? std::min(1.0, mag / r) : 0.0;
  out.argmin = r > 0.0 ? CVector(map * (bw * (-t * std::conj(phase) / r))) : CVector::Zero(ch.N());
  return out;
}

double WorstCaseReport::min_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& r : rx) m = std::min({m, r.sinr_margin, r.eh_margin});
  return m;
}

WorstCaseReport worst_case_report(const SystemParams& params, const ChannelSet& ch, const Design& d) {
  const int K = ch.K(), N = ch.N();
  if (params.K != K || params.N != N) throw ValidationError("worst_case_report: params and channels disagree on K/N");
  d.validate(K, N);
  std::vector<HermitianMatrix> W;
  W.reserve(K);
  for (const auto& w : d.w) W.push_back(HermitianMatrix::outer(w));

  WorstCaseReport rep;
  rep.rx.resize(K);
  for (int i = 0; i < K; ++i) {
    auto& r = rep.rx[i];
    r.sinr_errors.resize(K);
    r.eh_errors.resize(K);
    double signal = 0.0, interference = 0.0, harvested = 0.0;
    for (int j = 0; j < K; ++j) {
      const auto ext = link_extremes(ch, i, j, W[j]);
      harvested += ext.min;
      r.eh_errors[j] = ext.argmin;
      if (j == i) {
        signal = ext.min;
        r.sinr_errors[j] = ext.argmin;
      } else {
        interference += ext.max;
        r.sinr_errors[j] = ext.argmax;
      }
    }
    r.worst_sinr = sinr_value(signal, interference, params.sigma_sq[i], params.delta_sq[i], d.rho[i]);
    r.worst_eh = eh_value(harvested, params.sigma_sq[i], params.zeta[i], d.rho[i]);
    r.sinr_margin = relative_margin(r.worst_sinr, params.gamma[i]);
    r.eh_margin = relative_margin(r.worst_eh, params.eta[i]);
  }
  return rep;
}

}  // namespace rswipt::model
