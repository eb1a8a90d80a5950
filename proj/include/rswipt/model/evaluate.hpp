#pragma once

#include <vector>

#include "rswipt/model/system.hpp"

namespace rswipt::model {

struct LinkQuality {
  double sinr = 0.0;  // linear
  double eh = 0.0;    // mW
};

// SINR and harvested power per receiver over the channels h = h_hat + e
// (e = 0 when errors is null). rho = 0 gives SINR 0; rho = 1 gives EH 0.
std::vector<LinkQuality> evaluate_nominal(const SystemParams& params, const ChannelSet& ch, const Design& d,
                                          const Perturbations* errors = nullptr);

/// Extremes of the received power (h_hat + e)^H W (h_hat + e) over the
/// ellipsoid of link (i, j), with the attaining errors.
struct QuadraticExtremes {
  double min = 0.0;
  double max = 0.0;
  CVector argmin;
  CVector argmax;
};

QuadraticExtremes link_extremes(const ChannelSet& ch, int i, int j, const HermitianMatrix& W);

// Closed form for W = w w^H: the error term e^H w covers a disc of radius
// ||B^{-1/2} w|| around h_hat^H w.
QuadraticExtremes link_extremes_rank_one(const ChannelSet& ch, int i, int j, const CVector& w);

struct ReceiverWorstCase {
  double worst_sinr = 0.0;
  double worst_eh = 0.0;
  // Relative margins worst/target - 1; +inf when the target is zero.
  double sinr_margin = 0.0;
  double eh_margin = 0.0;
  // Errors e(i, j), j = 0..K-1, attaining the SINR and EH worst cases.
  std::vector<CVector> sinr_errors;
  std::vector<CVector> eh_errors;
};

struct WorstCaseReport {
  std::vector<ReceiverWorstCase> rx;

  double min_margin() const;
  bool satisfied(double rel_tol = 1e-6) const { return min_margin() >= -rel_tol; }
};

// Exact worst-case SINR and EH per receiver. Every e(i, j) enters exactly one
// term of each expression, so the worst case splits into independent
// per-link trust-region problems.
WorstCaseReport worst_case_report(const SystemParams& params, const ChannelSet& ch, const Design& d);

}  // namespace rswipt::model
