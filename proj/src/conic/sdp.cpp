#include "rswipt/conic/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "rswipt/error.hpp"

namespace rswipt::conic {

void LmiBlockSpec::add_term(int var, const Matrix& f) {
  for (auto& [v, m] : coeffs) {
    if (v == var) {
      m += f;
      return;
    }
  }
  coeffs.emplace_back(var, f);
}

Matrix LmiBlockSpec::evaluate(const Vector& y) const {
  Matrix out = constant;
  for (const auto& [v, f] : coeffs) out += y(v) * f;
  return out;
}

int ConicProblem::add_variable(std::string role, double cost) {
  const int idx = num_vars++;
  objective.conservativeResize(num_vars);
  objective(idx) = cost;
  var_meta.push_back({std::move(role), std::nullopt, std::nullopt});
  return idx;
}

void ConicProblem::add_block(LmiBlockSpec block) { blocks.push_back(std::move(block)); }

void ConicProblem::add_lower_bound(int var, double lb) {
  LmiBlockSpec b(1);
  b.constant(0, 0) = -lb;
  b.add_term(var, Matrix::Ones(1, 1));
  blocks.push_back(std::move(b));
  var_meta.at(var).lower = lb;
}

void ConicProblem::add_upper_bound(int var, double ub) {
  LmiBlockSpec b(1);
  b.constant(0, 0) = ub;
  b.add_term(var, -Matrix::Ones(1, 1));
  blocks.push_back(std::move(b));
  var_meta.at(var).upper = ub;
}

void ConicProblem::validate() const {
  if (num_vars < 1) throw ValidationError("ConicProblem: no variables");
  if (objective.size() != num_vars) throw ValidationError("ConicProblem: objective length != num_vars");
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& blk = blocks[b];
    auto fail = [&](const std::string& msg) {
      std::ostringstream os;
      os << "ConicProblem block " << b << ": " << msg;
      throw ValidationError(os.str());
    };
    if (blk.dim < 1) fail("dimension < 1");
    if (blk.constant.rows() != blk.dim || blk.constant.cols() != blk.dim) fail("constant has wrong shape");
    const double tol = 1e-10 * std::max(1.0, blk.constant.cwiseAbs().maxCoeff());
    if ((blk.constant - blk.constant.transpose()).cwiseAbs().maxCoeff() > tol) fail("constant not symmetric");
    for (const auto& [v, f] : blk.coeffs) {
      if (v < 0 || v >= num_vars) fail("variable index out of range");
      if (f.rows() != blk.dim || f.cols() != blk.dim) fail("coefficient has wrong shape");
      const double ftol = 1e-10 * std::max(1.0, f.cwiseAbs().maxCoeff());
      if ((f - f.transpose()).cwiseAbs().maxCoeff() > ftol) fail("coefficient not symmetric");
    }
  }
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unbounded: return "Unbounded";
    case SolveStatus::NumericalLimit: return "NumericalLimit";
  }
  return "?";
}

double min_block_eigenvalue(const ConicProblem& problem, const Vector& y) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& b : problem.blocks) lo = std::min(lo, min_eigenvalue(b.evaluate(y)));
  return lo;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Block {
  int n = 0;
  Matrix f0;
  std::vector<int> vars;
  std::vector<Matrix> f;
};

double inner(const Matrix& a, const Matrix& b) { return a.cwiseProduct(b).sum(); }

Matrix sym(const Matrix& a) { return 0.5 * (a + a.transpose()); }

// Largest alpha with P + alpha * dP >= 0, given a Cholesky factor of P > 0.
double max_step(const Matrix& p, const Eigen::LLT<Matrix>& chol, const Matrix& dp) {
  if (p.rows() == 1) {
    return dp(0, 0) < 0.0 ? -p(0, 0) / dp(0, 0) : kInf;
  }
  const auto l = chol.matrixL();
  Matrix z = l.solve(dp);
  z = l.solve(z.transpose()).transpose();
  const double lmin = min_eigenvalue(sym(z));
  return lmin < 0.0 ? -1.0 / lmin : kInf;
}

class InteriorPoint {
 public:
  InteriorPoint(const ConicProblem& p, const SolverConfig& cfg) : prob_(p), cfg_(cfg), m_(p.num_vars) {
    blocks_.reserve(p.blocks.size());
    coeff_norm_.setZero(m_);
    for (const auto& spec : p.blocks) {
      Block b;
      b.n = spec.dim;
      b.f0 = sym(spec.constant);
      for (const auto& [v, f] : spec.coeffs) {
        if (f.cwiseAbs().maxCoeff() == 0.0) continue;
        b.vars.push_back(v);
        b.f.push_back(sym(f));
        coeff_norm_(v) = std::hypot(coeff_norm_(v), f.norm());
      }
      f0_norm_sq_ += b.f0.squaredNorm();
      n_total_ += b.n;
      blocks_.push_back(std::move(b));
    }
    c_ = p.objective;
  }

  ConicSolution run();

 private:
  void initial_point();
  Matrix apply_map(const Block& b, const Vector& dy) const {
    Matrix out = Matrix::Zero(b.n, b.n);
    for (std::size_t t = 0; t < b.vars.size(); ++t) out += dy(b.vars[t]) * b.f[t];
    return out;
  }
  ConicSolution finish(SolveStatus status, int iters);

  const ConicProblem& prob_;
  SolverConfig cfg_;
  int m_;
  std::vector<Block> blocks_;
  Vector c_;
  Vector coeff_norm_;
  double f0_norm_sq_ = 0.0;
  int n_total_ = 0;

  Vector y_;
  std::vector<Matrix> x_, s_;
  double pres_ = 0.0, dres_ = 0.0, relgap_ = 0.0, pobj_ = 0.0, dobj_ = 0.0;
};

void InteriorPoint::initial_point() {
  y_ = Vector::Zero(m_);
  x_.clear();
  s_.clear();
  for (const auto& b : blocks_) {
    const double rn = std::sqrt(static_cast<double>(b.n));
    double xi_p = std::max(10.0, rn);
    double xi_d = std::max({10.0, rn, b.f0.norm()});
    for (std::size_t t = 0; t < b.vars.size(); ++t) {
      const int v = b.vars[t];
      const double fn = b.f[t].norm();
      xi_p = std::max(xi_p, b.n * (1.0 + std::abs(c_(v))) / (1.0 + fn));
      xi_d = std::max(xi_d, fn);
    }
    x_.push_back(xi_p * Matrix::Identity(b.n, b.n));
    s_.push_back(xi_d * Matrix::Identity(b.n, b.n));
  }
}

ConicSolution InteriorPoint::finish(SolveStatus status, int iters) {
  ConicSolution sol;
  sol.status = status;
  sol.y = y_;
  sol.block_duals = x_;
  sol.primal_objective = pobj_;
  sol.dual_objective = dobj_;
  sol.iterations = iters;
  sol.primal_residual = pres_;
  sol.dual_residual = dres_;
  sol.relative_gap = relgap_;
  return sol;
}

ConicSolution InteriorPoint::run() {
  initial_point();
  const std::size_t nb = blocks_.size();
  const double c_norm = c_.norm();
  const double c_inf = c_.size() ? c_.cwiseAbs().maxCoeff() : 0.0;
  const double f0_norm = std::sqrt(f0_norm_sq_);

  std::vector<Matrix> rd(nb), sinv(nb), dx(nb), ds(nb), dxa(nb), dsa(nb);
  std::vector<Eigen::LLT<Matrix>> chol_x(nb), chol_s(nb);
  Matrix schur(m_, m_);
  Vector rp(m_), rhs(m_), dy(m_);
  int infeasible_streak = 0, unbounded_streak = 0, stall_streak = 0;

  for (int iter = 0;; ++iter) {
    // Residuals and objectives at the current iterate.
    double rd_sq = 0.0, xs = 0.0;
    rp = c_;
    dobj_ = 0.0;
    for (std::size_t bi = 0; bi < nb; ++bi) {
      const Block& b = blocks_[bi];
      rd[bi] = b.f0 + apply_map(b, y_) - s_[bi];
      rd_sq += rd[bi].squaredNorm();
      xs += inner(x_[bi], s_[bi]);
      dobj_ -= inner(b.f0, x_[bi]);
      for (std::size_t t = 0; t < b.vars.size(); ++t) rp(b.vars[t]) -= inner(b.f[t], x_[bi]);
    }
    pobj_ = c_.dot(y_);
    pres_ = std::sqrt(rd_sq) / (1.0 + f0_norm);
    dres_ = rp.norm() / (1.0 + c_norm);
    const double denom = std::max(1.0, 0.5 * (std::abs(pobj_) + std::abs(dobj_)));
    relgap_ = std::max(std::abs(pobj_ - dobj_), std::abs(xs)) / denom;
    const double mu = xs / n_total_;

    if (cfg_.verbose) {
      std::fprintf(stderr, "it %3d pobj %+.9e dobj %+.9e pres %.2e dres %.2e gap %.2e\n", iter, pobj_, dobj_,
                   pres_, dres_, relgap_);
    }
    if (!std::isfinite(pobj_) || !std::isfinite(dobj_) || !std::isfinite(mu)) {
      return finish(SolveStatus::NumericalLimit, iter);
    }
    if (pres_ <= cfg_.feas_tol && dres_ <= cfg_.feas_tol && relgap_ <= cfg_.gap_tol) {
      return finish(SolveStatus::Optimal, iter);
    }

    // A diverging multiplier with a persistent slack residual approximates a
    // Farkas certificate for F(y) >= 0 (Infeasible); a diverging objective with
    // a persistent multiplier residual certifies unboundedness.
    const double diverge = cfg_.divergence_level;
    infeasible_streak = (dobj_ > diverge * (1.0 + c_inf) && pres_ > cfg_.stagnation_residual) ? infeasible_streak + 1 : 0;
    unbounded_streak = (pobj_ < -diverge * (1.0 + f0_norm) && dres_ > cfg_.stagnation_residual) ? unbounded_streak + 1 : 0;
    if (infeasible_streak >= cfg_.divergence_window) return finish(SolveStatus::Infeasible, iter);
    if (unbounded_streak >= cfg_.divergence_window) return finish(SolveStatus::Unbounded, iter);
    if (iter >= cfg_.max_iter) return finish(SolveStatus::NumericalLimit, iter);

    // Schur complement M_kl = sum_b tr(F_k X F_l S^{-1}).
    schur.setZero();
    for (std::size_t bi = 0; bi < nb; ++bi) {
      const Block& b = blocks_[bi];
      chol_s[bi].compute(s_[bi]);
      chol_x[bi].compute(x_[bi]);
      if (chol_s[bi].info() != Eigen::Success || chol_x[bi].info() != Eigen::Success) {
        return finish(SolveStatus::NumericalLimit, iter);
      }
      sinv[bi] = chol_s[bi].solve(Matrix::Identity(b.n, b.n));
      sinv[bi] = sym(sinv[bi]);
      const std::size_t nv = b.vars.size();
      if (b.n == 1) {
        const double w = x_[bi](0, 0) * sinv[bi](0, 0);
        for (std::size_t l = 0; l < nv; ++l) {
          for (std::size_t k = 0; k < nv; ++k) schur(b.vars[k], b.vars[l]) += w * b.f[k](0, 0) * b.f[l](0, 0);
        }
        continue;
      }
      for (std::size_t l = 0; l < nv; ++l) {
        const Matrix g = x_[bi] * b.f[l] * sinv[bi];
        for (std::size_t k = 0; k < nv; ++k) schur(b.vars[k], b.vars[l]) += inner(b.f[k], g);
      }
    }
    schur = sym(schur);
    for (int k = 0; k < m_; ++k) {
      if (schur(k, k) == 0.0) schur(k, k) = 1.0;
    }
    Eigen::LLT<Matrix> schur_llt(schur);
    Eigen::LDLT<Matrix> schur_ldlt;
    bool use_ldlt = false;
    if (schur_llt.info() != Eigen::Success) {
      Matrix reg = schur;
      reg.diagonal().array() += 1e-14 * std::max(1.0, schur.diagonal().maxCoeff());
      schur_ldlt.compute(reg);
      if (schur_ldlt.info() != Eigen::Success) return finish(SolveStatus::NumericalLimit, iter);
      use_ldlt = true;
    }
    auto solve_schur = [&](const Vector& r) -> Vector { return use_ldlt ? Vector(schur_ldlt.solve(r)) : Vector(schur_llt.solve(r)); };

    // Direction for target sigma*mu with optional second-order correction.
    auto direction = [&](double sigma_mu, const std::vector<Matrix>* cx, const std::vector<Matrix>* cs,
                         std::vector<Matrix>& out_dx, std::vector<Matrix>& out_ds) {
      std::vector<Matrix> r(nb);
      rhs = -rp;
      for (std::size_t bi = 0; bi < nb; ++bi) {
        const Block& b = blocks_[bi];
        Matrix rb = -x_[bi] - x_[bi] * rd[bi] * sinv[bi];
        if (sigma_mu != 0.0) rb += sigma_mu * sinv[bi];
        if (cx) rb -= (*cx)[bi] * (*cs)[bi] * sinv[bi];
        for (std::size_t t = 0; t < b.vars.size(); ++t) rhs(b.vars[t]) += inner(b.f[t], rb);
        r[bi] = std::move(rb);
      }
      dy = solve_schur(rhs);
      for (std::size_t bi = 0; bi < nb; ++bi) {
        const Block& b = blocks_[bi];
        const Matrix fdy = apply_map(b, dy);
        out_ds[bi] = rd[bi] + fdy;
        out_dx[bi] = sym(r[bi] - x_[bi] * fdy * sinv[bi]);
      }
    };
    auto step_lengths = [&](const std::vector<Matrix>& ddx, const std::vector<Matrix>& dds) {
      double ap = kInf, ad = kInf;
      for (std::size_t bi = 0; bi < nb; ++bi) {
        ap = std::min(ap, max_step(x_[bi], chol_x[bi], ddx[bi]));
        ad = std::min(ad, max_step(s_[bi], chol_s[bi], dds[bi]));
      }
      return std::pair<double, double>{ap, ad};
    };

    // Predictor.
    direction(0.0, nullptr, nullptr, dxa, dsa);
    auto [ap_aff, ad_aff] = step_lengths(dxa, dsa);
    ap_aff = std::min(1.0, ap_aff);
    ad_aff = std::min(1.0, ad_aff);
    double xs_aff = 0.0;
    for (std::size_t bi = 0; bi < nb; ++bi) {
      xs_aff += inner(x_[bi] + ap_aff * dxa[bi], s_[bi] + ad_aff * dsa[bi]);
    }
    const double mu_aff = std::max(0.0, xs_aff / n_total_);
    double sigma = mu > 0.0 ? std::pow(mu_aff / mu, 3) : 0.0;
    sigma = std::clamp(sigma, 0.0, 1.0);

    // Corrector.
    direction(sigma * mu, &dxa, &dsa, dx, ds);
    auto [ap, ad] = step_lengths(dx, ds);
    ap = std::min(1.0, cfg_.step_fraction * ap);
    ad = std::min(1.0, cfg_.step_fraction * ad);
    if (!std::isfinite(ap) || !std::isfinite(ad)) return finish(SolveStatus::NumericalLimit, iter);

    stall_streak = (ap < 1e-10 && ad < 1e-10) ? stall_streak + 1 : 0;
    if (stall_streak >= 5) return finish(SolveStatus::NumericalLimit, iter);

    for (std::size_t bi = 0; bi < nb; ++bi) {
      x_[bi] = sym(x_[bi] + ap * dx[bi]);
      s_[bi] = sym(s_[bi] + ad * ds[bi]);
    }
    y_ += ad * dy;
  }
}

}  // namespace

ConicSolution solve_sdp(const ConicProblem& problem, const SolverConfig& cfg) {
  problem.validate();
  InteriorPoint ipm(problem, cfg);
  return ipm.run();
}

}  // namespace rswipt::conic
