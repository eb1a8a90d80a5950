#pragma once

#include "rswipt/conic/hermitian.hpp"

namespace rswipt::conic {

enum class Sense { Minimize, Maximize };

/// Extremize q(u) = u^H M u + 2 Re(m^H u) + m0 over the closed unit ball.
struct TrsProblem {
  CMatrix M;
  CVector m;
  double m0 = 0.0;
  Sense sense = Sense::Minimize;
};

struct TrsResult {
  double value = 0.0;
  CVector u;
  // KKT multiplier of the ball constraint for the minimization form
  // ((M + lambda I) u = -m); for Maximize it refers to (-M, -m).
  double multiplier = 0.0;
  bool hard_case = false;
};

// Global extremum via eigendecomposition and a safeguarded Newton iteration
// on the secular equation; the hard case is completed along the extreme
// eigenvector. Throws ValidationError on shape mismatch or non-Hermitian M.
TrsResult trs_extremize(const TrsProblem& p);

double trs_objective(const TrsProblem& p, const CVector& u);

}  // namespace rswipt::conic
