#include "rswipt/conic/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rswipt/error.hpp"

namespace rswipt::conic {

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

HermitianMatrix::HermitianMatrix(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << "HermitianMatrix: non-square input " << m.rows() << "x" << m.cols();
    throw ValidationError(os.str());
  }
  if (m.size() > 0 && !is_hermitian(m, tol)) {
    throw ValidationError("HermitianMatrix: conjugate symmetry violated beyond tolerance");
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::zero(int n) { return {CMatrix::Zero(n, n), Unchecked{}}; }

HermitianMatrix HermitianMatrix::identity(int n, double scale) {
  return {CMatrix::Identity(n, n) * scale, Unchecked{}};
}

HermitianMatrix HermitianMatrix::outer(const CVector& v) {
  CMatrix m = v * v.adjoint();
  m = (0.5 * (m + m.adjoint())).eval();
  return {std::move(m), Unchecked{}};
}

Vector HermitianMatrix::eigenvalues() const {
  if (m_.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double HermitianMatrix::min_eigenvalue() const {
  const Vector ev = eigenvalues();
  return ev.size() ? ev(0) : 0.0;
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  return {m_ + o.m_, Unchecked{}};
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  return {m_ - o.m_, Unchecked{}};
}

HermitianMatrix HermitianMatrix::operator*(double s) const { return {m_ * s, Unchecked{}}; }

Matrix realify_unchecked(const CMatrix& m) {
  const Eigen::Index n = m.rows();
  Matrix t(2 * n, 2 * n);
  t.topLeftCorner(n, n) = m.real();
  t.topRightCorner(n, n) = -m.imag();
  t.bottomLeftCorner(n, n) = m.imag();
  t.bottomRightCorner(n, n) = m.real();
  return t;
}

Matrix realify(const HermitianMatrix& h) { return realify_unchecked(h.matrix()); }

double min_eigenvalue(const Matrix& sym) {
  if (sym.size() == 0) return 0.0;
  if (sym.rows() == 1) return sym(0, 0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

namespace {

HermitianMatrix spectral_map(const HermitianMatrix& h, double (*f)(double)) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix());
  Vector d = es.eigenvalues().unaryExpr(f);
  const CMatrix& v = es.eigenvectors();
  return HermitianMatrix(v * d.cast<Complex>().asDiagonal() * v.adjoint(), 1e-9);
}

}  // namespace

HermitianMatrix psd_sqrt(const HermitianMatrix& h) {
  return spectral_map(h, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

HermitianMatrix pd_inverse_sqrt(const HermitianMatrix& h) {
  if (h.dim() > 0 && !(h.min_eigenvalue() > 0.0)) {
    throw ValidationError("pd_inverse_sqrt: matrix is not positive definite");
  }
  return spectral_map(h, [](double x) { return 1.0 / std::sqrt(x); });
}

}  // namespace rswipt::conic
