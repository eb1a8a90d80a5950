#include "rswipt/robust/lmi.hpp"

#include <algorithm>

#include "rswipt/error.hpp"

namespace rswipt::robust {

namespace {

void require_shape(const AffineMatrix& a, int r, int c, const char* name) {
  if (a.rows() != r || a.cols() != c) throw ValidationError(std::string("qmi_to_lmi: wrong shape for ") + name);
}

void require_psd(const HermitianMatrix& d, const char* name) {
  const double scale = std::max(1.0, d.matrix().cwiseAbs().maxCoeff());
  if (d.min_eigenvalue() < -1e-12 * scale) throw ValidationError(std::string(name) + " must be positive semidefinite");
}

// -nu * diag(0_p, I_q, -D)
AffineMatrix multiplier_term(int p, int q, const HermitianMatrix& D, Multiplier nu) {
  const int n = D.dim();
  CMatrix coeff = CMatrix::Zero(p + q + n, p + q + n);
  coeff.block(p, p, q, q) = -CMatrix::Identity(q, q);
  coeff.block(p + q, p + q, n, n) = D.matrix();
  return AffineMatrix::variable(nu.var, nu.scale * coeff);
}

}  // namespace

AffineMatrix qmi_to_lmi(const QmiData& d, const HermitianMatrix& D1, Multiplier nu1,
                        const std::optional<HermitianMatrix>& D2, std::optional<Multiplier> nu2) {
  const int p = d.A1.rows(), q = d.A4.rows(), n = d.A6.rows();
  require_shape(d.A1, p, p, "A1");
  require_shape(d.A2, p, q, "A2");
  require_shape(d.A3, p, n, "A3");
  require_shape(d.A4, q, q, "A4");
  require_shape(d.A5, q, n, "A5");
  require_shape(d.A6, n, n, "A6");
  if (D1.dim() != n) throw ValidationError("qmi_to_lmi: D1 must be n x n");
  require_psd(D1, "D1");
  if (nu1.var < 0) throw ValidationError("qmi_to_lmi: missing multiplier");

  AffineMatrix lmi = AffineMatrix::blocks({{d.A1, d.A2, d.A3},
                                           {d.A2.adjoint(), d.A4, d.A5},
                                           {d.A3.adjoint(), d.A5.adjoint(), d.A6}});
  lmi = lmi + multiplier_term(p, q, D1, nu1);
  if (D2 && D2->matrix().cwiseAbs().maxCoeff() > 0.0) {
    if (D2->dim() != n) throw ValidationError("qmi_to_lmi: D2 must be n x n");
    require_psd(*D2, "D2");
    if (!nu2 || nu2->var < 0) throw ValidationError("qmi_to_lmi: D2 given without a multiplier");
    lmi = lmi + multiplier_term(p, q, *D2, *nu2);
  }
  return lmi;
}

AffineMatrix s_lemma_lmi(const AffineMatrix& A, const AffineMatrix& c, const AffineMatrix& d, const HermitianMatrix& B,
                         Multiplier lambda) {
  const int n = A.rows();
  if (A.cols() != n || c.rows() != n || c.cols() != 1 || d.rows() != 1 || d.cols() != 1 || B.dim() != n) {
    throw ValidationError("s_lemma_lmi: shape mismatch");
  }
  require_psd(B, "B");
  CMatrix coeff = CMatrix::Zero(n + 1, n + 1);
  coeff.topLeftCorner(n, n) = B.matrix();
  coeff(n, n) = -1.0;
  return AffineMatrix::blocks({{A, c}, {c.adjoint(), d}}) + AffineMatrix::variable(lambda.var, lambda.scale * coeff);
}

}  // namespace rswipt::robust
