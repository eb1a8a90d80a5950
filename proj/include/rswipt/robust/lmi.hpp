#pragma once

#include <optional>

#include "rswipt/robust/affine.hpp"

namespace rswipt::robust {

// A scalar multiplier with value scale * y[var]. Scaling keeps the block
// entries of comparable magnitude when the ellipsoid shape is large.
struct Multiplier {
  int var = -1;
  double scale = 1.0;
};

/// Data of the quadratic matrix inequality in the error X (n x q):
///   [[A1, A2 + A3 X], [., A4 + A5 X + (A5 X)^H + X^H A6 X]] >= 0
/// for every X with tr(D1 X X^H) <= 1 (and tr(D2 X X^H) <= 1).
/// Shapes: A1 p x p, A2 p x q, A3 p x n, A4 q x q, A5 q x n, A6 n x n.
struct QmiData {
  AffineMatrix A1, A2, A3, A4, A5, A6;
};

// Sufficient (and for a single constraint exact) LMI in the multipliers:
//   [[A1, A2, A3], [A2^H, A4, A5], [A3^H, A5^H, A6]]
//     - nu1 diag(0, I_q, -D1) - nu2 diag(0, I_q, -D2) >= 0.
// The nu2 term is dropped when D2 is absent or zero. Throws ValidationError
// on shape mismatches or indefinite D.
AffineMatrix qmi_to_lmi(const QmiData& d, const HermitianMatrix& D1, Multiplier nu1,
                        const std::optional<HermitianMatrix>& D2 = std::nullopt,
                        std::optional<Multiplier> nu2 = std::nullopt);

// x^H A x + 2 Re(c^H x) + d >= 0 for all x^H B x <= 1 holds iff, for some
// lambda >= 0, [[A + lambda B, c], [c^H, d - lambda]] >= 0.
// A is n x n, c is n x 1, d is 1 x 1.
AffineMatrix s_lemma_lmi(const AffineMatrix& A, const AffineMatrix& c, const AffineMatrix& d, const HermitianMatrix& B,
                         Multiplier lambda);

}  // namespace rswipt::robust
