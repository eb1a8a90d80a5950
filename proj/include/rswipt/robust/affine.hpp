#pragma once

#include <map>
#include <vector>

#include "rswipt/conic/hermitian.hpp"
#include "rswipt/conic/sdp.hpp"

namespace rswipt::robust {

using conic::CMatrix;
using conic::Complex;
using conic::CVector;
using conic::HermitianMatrix;
using conic::Matrix;
using conic::Vector;

/// Complex matrix that is affine in the real decision vector y:
/// A(y) = C0 + sum_k y_k C_k.
class AffineMatrix {
 public:
  AffineMatrix() = default;
  AffineMatrix(int rows, int cols);

  static AffineMatrix constant(const CMatrix& c);
  static AffineMatrix scalar(Complex c);
  static AffineMatrix variable(int var, const CMatrix& coeff);
  static AffineMatrix scalar_variable(int var, double coeff = 1.0);
  // Assembles a block matrix; every row of blocks must have consistent shapes.
  static AffineMatrix blocks(const std::vector<std::vector<AffineMatrix>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const CMatrix& constant_term() const { return c0_; }
  const std::map<int, CMatrix>& terms() const { return terms_; }

  AffineMatrix operator+(const AffineMatrix& o) const;
  AffineMatrix operator-(const AffineMatrix& o) const;
  AffineMatrix operator-() const;
  AffineMatrix operator*(Complex s) const;
  AffineMatrix operator*(const CMatrix& right) const;
  friend AffineMatrix operator*(const CMatrix& left, const AffineMatrix& a);
  AffineMatrix adjoint() const;

  CMatrix evaluate(const Vector& y) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  CMatrix c0_;
  std::map<int, CMatrix> terms_;
};

// Hermitian affine matrix -> real LMI block. Data with a nonzero imaginary
// part is realified (dimension doubles); real data is used directly.
// Throws ValidationError when a coefficient is not Hermitian.
conic::LmiBlockSpec to_lmi_block(const AffineMatrix& h);

/// Coordinates of an n x n Hermitian matrix in the orthonormal basis
/// {E_kk} then, for k < l, {(E_kl + E_lk)/sqrt2, i(E_kl - E_lk)/sqrt2}.
/// The first n coordinates are the diagonal, so tr(W) is their sum.
std::vector<CMatrix> hermitian_basis(int n);
AffineMatrix hermitian_variable(int first_var, int n);
HermitianMatrix hermitian_from_coords(const Vector& y, int first_var, int n);

}  // namespace rswipt::robust
