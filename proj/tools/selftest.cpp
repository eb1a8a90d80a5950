#include "selftest.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "oracles.hpp"
#include "rswipt/admm/consensus.hpp"
#include "rswipt/conic/sdp.hpp"
#include "rswipt/model/instance.hpp"
#include "rswipt/model/rng.hpp"
#include "rswipt/robust/extract.hpp"

namespace rswipt::tools {

namespace {

using conic::CMatrix;
using conic::Complex;
using conic::Matrix;
using conic::Vector;

bool lambda_max_check() {
  // min t  s.t.  t I - A >= 0  has optimum lambda_max(A).
  Matrix A(3, 3);
  A << 2, 1, 0, 1, 3, 1, 0, 1, 4;
  conic::ConicProblem pb;
  const int t = pb.add_variable("t", 1.0);
  conic::LmiBlockSpec b(3);
  b.constant = -A;
  b.add_term(t, Matrix::Identity(3, 3));
  pb.add_block(b);
  const auto sol = conic::solve_sdp(pb);
  const double ref = Eigen::SelfAdjointEigenSolver<Matrix>(A).eigenvalues().maxCoeff();
  return sol.status == conic::SolveStatus::Optimal && std::abs(sol.y(t) - ref) <= 1e-6 * ref;
}

bool trs_check() {
  model::Philox g(11);
  for (int k = 0; k < 5; ++k) {
    const int n = 1 + k % 3;
    CMatrix X(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) X(r, c) = model::complex_normal(g);
    conic::TrsProblem p;
    p.M = 0.5 * (X + X.adjoint());
    p.m = conic::CVector(n);
    for (int r = 0; r < n; ++r) p.m(r) = model::complex_normal(g);
    p.m0 = 0.3;
    for (auto sense : {conic::Sense::Minimize, conic::Sense::Maximize}) {
      p.sense = sense;
      const double exact = conic::trs_extremize(p).value;
      const double brute = oracle::trs_bruteforce(p, 100 + k, 4000, 10);
      if (std::abs(exact - brute) > 1e-3 * (1.0 + std::abs(exact))) return false;
    }
  }
  return true;
}

bool single_link_check() {
  for (int s = 0; s < 5; ++s) {
    const auto p = model::SystemParams::uniform(1, 1, 1e-7, 1e-5, 0.25, 2.0, 0.1, 0.05);
    const auto ch = model::generate_instance(1000 + s, p);
    if (std::abs(ch.h_hat(0, 0)(0)) < 0.1) continue;
    const auto rs = robust::solve_centralized(robust::assemble_centralized(p, ch));
    const double ref = oracle::single_link_min_power(p, ch);
    if (!rs.ok() || std::abs(rs.objective - ref) > 1e-3 * ref) return false;
  }
  return true;
}

bool bound_chain_check() {
  const auto p = model::SystemParams::uniform(2, 4, model::dbm_to_mw(-70), model::dbm_to_mw(-50), 0.25,
                                              model::db_to_ratio(4), model::dbm_to_mw(-5), 0.05);
  for (int s = 0; s < 3; ++s) {
    const auto ch = model::generate_instance(s, p);
    const auto rs = robust::solve_centralized(robust::assemble_centralized(p, ch));
    const auto rn = robust::solve_centralized(robust::assemble_nominal(p, ch.nominal()));
    if (!rs.ok() || !rn.ok()) return false;
    const auto ex = robust::extract_beamformers(rs, p, ch, 5, 50);
    const double tol = 1e-6 * rs.objective;
    if (!ex.feasible || rn.objective > rs.objective + tol || rs.objective > ex.total_power + tol) return false;
  }
  return true;
}

bool consensus_check() {
  const int K = 3;
  model::Philox g(3);
  std::vector<Vector> local(K), betas(K);
  for (int i = 0; i < K; ++i) {
    local[i] = Vector(admm::local_size(K));
    betas[i] = Vector(admm::local_size(K));
    for (int k = 0; k < local[i].size(); ++k) {
      local[i](k) = model::standard_normal(g);
      betas[i](k) = model::standard_normal(g);
    }
  }
  const double c = 1.7;
  const Vector t = admm::consensus_update(K, local, betas, c);
  Matrix EtE = Matrix::Zero(admm::public_size(K), admm::public_size(K));
  Vector rhs = Vector::Zero(admm::public_size(K));
  for (int i = 0; i < K; ++i) {
    const Matrix E = admm::selection_matrix(K, i);
    EtE += E.transpose() * E;
    rhs += E.transpose() * (local[i] - betas[i] / c);
  }
  return (EtE.ldlt().solve(rhs) - t).cwiseAbs().maxCoeff() <= 1e-10;
}

}  // namespace

int run_selftest(std::ostream& os) {
  const std::pair<const char*, std::function<bool()>> checks[] = {
      {"sdp lambda_max", lambda_max_check},
      {"trust-region vs brute force", trs_check},
      {"single-link relaxation vs grid", single_link_check},
      {"nominal <= relaxation <= extracted", bound_chain_check},
      {"consensus vs normal equations", consensus_check},
  };
  int failed = 0;
  for (const auto& [name, f] : checks) {
    bool ok = false;
    try {
      ok = f();
    } catch (const std::exception& e) {
      os << "  error: " << e.what() << '\n';
    }
    os << (ok ? "PASS " : "FAIL ") << name << '\n';
    failed += !ok;
  }
  return failed;
}

}  // namespace rswipt::tools
