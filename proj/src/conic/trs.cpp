#include "rswipt/conic/trs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rswipt/error.hpp"

namespace rswipt::conic {

double trs_objective(const TrsProblem& p, const CVector& u) {
  const double quad = (u.adjoint() * p.M * u)(0, 0).real();
  const double lin = 2.0 * p.m.dot(u).real();  // dot conjugates the first argument
  return quad + lin + p.m0;
}

namespace {

// Minimization form.
TrsResult minimize(const CMatrix& M, const CVector& m, double m0) {
  const int n = static_cast<int>(M.rows());
  TrsResult res;
  if (n == 0) {
    res.value = m0;
    return res;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(M);
  const Vector& l = es.eigenvalues();
  const CMatrix& v = es.eigenvectors();
  const CVector b = v.adjoint() * m;
  const Vector b2 = b.cwiseAbs2();
  const double scale = std::max({1.0, l.cwiseAbs().maxCoeff(), std::sqrt(b2.sum())});
  const double eig_tol = 1e-12 * scale;

  auto z_of = [&](double lam) {
    CVector z(n);
    for (int k = 0; k < n; ++k) z(k) = b2(k) == 0.0 ? Complex(0.0) : -b(k) / (l(k) + lam);
    return z;
  };
  auto finish = [&](const CVector& z, double lam) {
    res.u = v * z;
    res.multiplier = lam;
    res.value = (res.u.adjoint() * M * res.u)(0, 0).real() + 2.0 * m.dot(res.u).real() + m0;
    return res;
  };

  const double l1 = l(0);
  // Interior solution of a convex problem.
  if (l1 > eig_tol) {
    const CVector z = z_of(0.0);
    if (z.norm() <= 1.0) return finish(z, 0.0);
  }

  // Hard case: m has (numerically) no component on the extreme eigenspace
  // and the limit point at lam = -l1 lies inside the ball.
  double b_extreme = 0.0;
  int j = 0;
  while (j < n && l(j) - l1 <= eig_tol) b_extreme += b2(j++);
  const double lam_floor = std::max(0.0, -l1);
  if (l1 <= eig_tol && b_extreme <= 1e-24 * scale * scale) {
    CVector z = CVector::Zero(n);
    for (int k = j; k < n; ++k) z(k) = -b(k) / (l(k) + lam_floor);
    const double zn = z.norm();
    if (zn <= 1.0) {
      z(0) += std::sqrt(std::max(0.0, 1.0 - zn * zn));
      res.hard_case = true;
      return finish(z, lam_floor);
    }
  }

  // Secular equation ||z|| = 1, solved in the shift mu = lam + l1 so that the
  // denominators (l_k - l1) + mu keep full relative precision when lam sits
  // just above -l1 (nearly hard case). psi(mu) = 1/||z|| - 1 is increasing and
  // nearly linear, so Newton on psi with bisection fallback.
  Vector gap(n);
  for (int k = 0; k < n; ++k) gap(k) = l(k) - l1;
  auto norm_sq = [&](double mu) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
      if (b2(k) == 0.0) continue;
      const double d = gap(k) + mu;
      s += b2(k) / (d * d);
    }
    return s;
  };
  double lo = lam_floor + l1;
  double hi = std::max(lo, std::sqrt(b2.sum())) + 1e-300;
  while (norm_sq(hi) > 1.0) hi = 2.0 * hi + 1.0;
  double mu = hi;
  for (int it = 0; it < 200; ++it) {
    const double s = norm_sq(mu);
    const double zn = std::sqrt(s);
    if (zn > 1.0) lo = mu; else hi = mu;
    if (std::abs(zn - 1.0) <= 1e-15 || hi - lo <= 4 * std::numeric_limits<double>::epsilon() * std::max(1e-300, hi)) break;
    double ds = 0.0;  // d/dmu of ||z||^2 is -2 sum b2/(gap+mu)^3
    for (int k = 0; k < n; ++k) {
      if (b2(k) == 0.0) continue;
      const double d = gap(k) + mu;
      ds += b2(k) / (d * d * d);
    }
    // psi = 1/zn - 1, psi' = ds / zn^3
    const double step = (1.0 / zn - 1.0) / (ds / (s * zn));
    double next = mu - step;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    mu = next;
  }
  CVector z(n);
  for (int k = 0; k < n; ++k) z(k) = b2(k) == 0.0 ? Complex(0.0) : -b(k) / (gap(k) + mu);
  // Remove the last rounding so the point is feasible.
  const double zn = z.norm();
  if (zn > 1.0) z /= zn;
  return finish(z, mu - l1);
}

}  // namespace

TrsResult trs_extremize(const TrsProblem& p) {
  if (p.M.rows() != p.M.cols() || p.M.rows() != p.m.size()) {
    throw ValidationError("trs_extremize: dimension mismatch between M and m");
  }
  if (p.M.size() > 0 && !is_hermitian(p.M, 1e-10)) throw ValidationError("trs_extremize: M is not Hermitian");
  const CMatrix herm = 0.5 * (p.M + p.M.adjoint());
  if (p.sense == Sense::Minimize) return minimize(herm, p.m, p.m0);
  TrsResult r = minimize(-herm, -p.m, -p.m0);
  r.value = -r.value;
  return r;
}

}  // namespace rswipt::conic
