#pragma once

#include <complex>

#include <Eigen/Dense>

namespace rswipt::conic {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Default symmetry tolerance, relative to max(1, max |entry|).
inline constexpr double kHermitianTol = 1e-12;

/// Complex Hermitian matrix. Construction validates conjugate symmetry and
/// stores the exactly symmetrized matrix (real diagonal).
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const CMatrix& m, double tol = kHermitianTol);

  static HermitianMatrix zero(int n);
  static HermitianMatrix identity(int n, double scale = 1.0);
  static HermitianMatrix outer(const CVector& v);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }

  double trace() const { return m_.diagonal().real().sum(); }
  // Ascending.
  Vector eigenvalues() const;
  double min_eigenvalue() const;
  double quadratic_form(const CVector& x) const { return (x.adjoint() * m_ * x)(0, 0).real(); }

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator*(double s) const;

 private:
  struct Unchecked {};
  HermitianMatrix(CMatrix m, Unchecked) : m_(std::move(m)) {}
  CMatrix m_;
};

bool is_hermitian(const CMatrix& m, double tol = kHermitianTol);

/// T(H) = [[Re H, -Im H], [Im H, Re H]]. Spectrum of T(H) is that of H with
/// every eigenvalue doubled in multiplicity.
Matrix realify(const HermitianMatrix& h);
// Same embedding without the symmetry check; used for affine coefficients
// that were validated at construction.
Matrix realify_unchecked(const CMatrix& m);

double min_eigenvalue(const Matrix& sym);

/// Principal square root and inverse square root of a PSD / PD Hermitian matrix.
HermitianMatrix psd_sqrt(const HermitianMatrix& h);
HermitianMatrix pd_inverse_sqrt(const HermitianMatrix& h);

}  // namespace rswipt::conic
