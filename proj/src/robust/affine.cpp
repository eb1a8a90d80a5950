#include "rswipt/robust/affine.hpp"

#include <cmath>
#include <numbers>

#include "rswipt/error.hpp"

namespace rswipt::robust {

AffineMatrix::AffineMatrix(int rows, int cols) : rows_(rows), cols_(cols), c0_(CMatrix::Zero(rows, cols)) {}

AffineMatrix AffineMatrix::constant(const CMatrix& c) {
  AffineMatrix a(static_cast<int>(c.rows()), static_cast<int>(c.cols()));
  a.c0_ = c;
  return a;
}

AffineMatrix AffineMatrix::scalar(Complex c) { return constant(CMatrix::Constant(1, 1, c)); }

AffineMatrix AffineMatrix::variable(int var, const CMatrix& coeff) {
  AffineMatrix a(static_cast<int>(coeff.rows()), static_cast<int>(coeff.cols()));
  a.terms_.emplace(var, coeff);
  return a;
}

AffineMatrix AffineMatrix::scalar_variable(int var, double coeff) {
  return variable(var, CMatrix::Constant(1, 1, Complex(coeff)));
}

AffineMatrix AffineMatrix::blocks(const std::vector<std::vector<AffineMatrix>>& rows) {
  if (rows.empty()) return {};
  std::vector<int> heights, widths;
  for (const auto& row : rows) {
    if (row.size() != rows.front().size()) throw ValidationError("AffineMatrix::blocks: ragged block rows");
    heights.push_back(row.front().rows());
  }
  for (const auto& b : rows.front()) widths.push_back(b.cols());
  int total_r = 0, total_c = 0;
  for (int h : heights) total_r += h;
  for (int w : widths) total_c += w;

  AffineMatrix out(total_r, total_c);
  int r0 = 0;
  for (std::size_t br = 0; br < rows.size(); ++br) {
    int c0 = 0;
    for (std::size_t bc = 0; bc < rows[br].size(); ++bc) {
      const AffineMatrix& b = rows[br][bc];
      if (b.rows() != heights[br] || b.cols() != widths[bc]) {
        throw ValidationError("AffineMatrix::blocks: inconsistent block shapes");
      }
      out.c0_.block(r0, c0, b.rows(), b.cols()) = b.c0_;
      for (const auto& [v, m] : b.terms_) {
        auto it = out.terms_.find(v);
        if (it == out.terms_.end()) it = out.terms_.emplace(v, CMatrix::Zero(total_r, total_c)).first;
        it->second.block(r0, c0, b.rows(), b.cols()) += m;
      }
      c0 += widths[bc];
    }
    r0 += heights[br];
  }
  return out;
}

AffineMatrix AffineMatrix::operator+(const AffineMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ValidationError("AffineMatrix: shape mismatch in +");
  AffineMatrix out = *this;
  out.c0_ += o.c0_;
  for (const auto& [v, m] : o.terms_) {
    auto it = out.terms_.find(v);
    if (it == out.terms_.end()) out.terms_.emplace(v, m);
    else it->second += m;
  }
  return out;
}

AffineMatrix AffineMatrix::operator-(const AffineMatrix& o) const { return *this + (-o); }

AffineMatrix AffineMatrix::operator-() const { return *this * Complex(-1.0); }

AffineMatrix AffineMatrix::operator*(Complex s) const {
  AffineMatrix out = *this;
  out.c0_ *= s;
  for (auto& [v, m] : out.terms_) m *= s;
  return out;
}

AffineMatrix AffineMatrix::operator*(const CMatrix& right) const {
  if (cols_ != right.rows()) throw ValidationError("AffineMatrix: shape mismatch in right product");
  AffineMatrix out(rows_, static_cast<int>(right.cols()));
  out.c0_ = c0_ * right;
  for (const auto& [v, m] : terms_) out.terms_.emplace(v, m * right);
  return out;
}

AffineMatrix operator*(const CMatrix& left, const AffineMatrix& a) {
  if (left.cols() != a.rows_) throw ValidationError("AffineMatrix: shape mismatch in left product");
  AffineMatrix out(static_cast<int>(left.rows()), a.cols_);
  out.c0_ = left * a.c0_;
  for (const auto& [v, m] : a.terms_) out.terms_.emplace(v, left * m);
  return out;
}

AffineMatrix AffineMatrix::adjoint() const {
  AffineMatrix out(cols_, rows_);
  out.c0_ = c0_.adjoint();
  for (const auto& [v, m] : terms_) out.terms_.emplace(v, m.adjoint());
  return out;
}

CMatrix AffineMatrix::evaluate(const Vector& y) const {
  CMatrix out = c0_;
  for (const auto& [v, m] : terms_) out += y(v) * m;
  return out;
}

namespace {

constexpr double kCoeffTol = 1e-10;

bool negligible_imag(const CMatrix& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return m.imag().cwiseAbs().maxCoeff() <= 1e-14 * scale;
}

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

conic::LmiBlockSpec to_lmi_block(const AffineMatrix& h) {
  if (h.rows() != h.cols()) throw ValidationError("to_lmi_block: matrix is not square");
  bool real = negligible_imag(h.constant_term());
  if (!conic::is_hermitian(h.constant_term(), kCoeffTol)) throw ValidationError("to_lmi_block: constant term not Hermitian");
  for (const auto& [v, m] : h.terms()) {
    if (!conic::is_hermitian(m, kCoeffTol)) throw ValidationError("to_lmi_block: coefficient not Hermitian");
    real = real && negligible_imag(m);
  }
  const int n = h.rows();
  conic::LmiBlockSpec b(real ? n : 2 * n);
  auto convert = [&](const CMatrix& m) -> Matrix {
    const CMatrix herm = 0.5 * (m + m.adjoint());
    return real ? symmetrize(herm.real()) : symmetrize(conic::realify_unchecked(herm));
  };
  b.constant = convert(h.constant_term());
  for (const auto& [v, m] : h.terms()) {
    if (m.cwiseAbs().maxCoeff() == 0.0) continue;
    b.add_term(v, convert(m));
  }
  return b;
}

std::vector<CMatrix> hermitian_basis(int n) {
  std::vector<CMatrix> basis;
  basis.reserve(static_cast<std::size_t>(n * n));
  for (int k = 0; k < n; ++k) {
    CMatrix e = CMatrix::Zero(n, n);
    e(k, k) = 1.0;
    basis.push_back(std::move(e));
  }
  const double s = 1.0 / std::numbers::sqrt2;
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      CMatrix sym = CMatrix::Zero(n, n);
      sym(k, l) = sym(l, k) = s;
      CMatrix skew = CMatrix::Zero(n, n);
      skew(k, l) = Complex(0.0, s);
      skew(l, k) = Complex(0.0, -s);
      basis.push_back(std::move(sym));
      basis.push_back(std::move(skew));
    }
  }
  return basis;
}

AffineMatrix hermitian_variable(int first_var, int n) {
  const auto basis = hermitian_basis(n);
  AffineMatrix w(n, n);
  for (std::size_t t = 0; t < basis.size(); ++t) w = w + AffineMatrix::variable(first_var + static_cast<int>(t), basis[t]);
  return w;
}

HermitianMatrix hermitian_from_coords(const Vector& y, int first_var, int n) {
  const auto basis = hermitian_basis(n);
  CMatrix w = CMatrix::Zero(n, n);
  for (std::size_t t = 0; t < basis.size(); ++t) w += y(first_var + static_cast<int>(t)) * basis[t];
  return HermitianMatrix(w);
}

}  // namespace rswipt::robust
