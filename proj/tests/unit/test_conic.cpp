#include <doctest.h>

#include <chrono>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "rswipt/conic/sdp.hpp"
#include "rswipt/conic/sdpa_io.hpp"
#include "rswipt/conic/trs.hpp"
#include "rswipt/error.hpp"
#include "rswipt/model/rng.hpp"
#include "sdp_library.hpp"

using namespace rswipt;
using namespace rswipt::conic;

namespace {

CMatrix random_hermitian(int n, model::Philox& g) {
  CMatrix X(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) X(r, c) = model::complex_normal(g);
  return 0.5 * (X + X.adjoint());
}

CVector random_vector(int n, model::Philox& g) {
  CVector v(n);
  for (int k = 0; k < n; ++k) v(k) = model::complex_normal(g);
  return v;
}

Vector sorted_eigs(const Matrix& m) { return Eigen::SelfAdjointEigenSolver<Matrix>(m).eigenvalues(); }

}  // namespace

TEST_CASE("realify of the identity is the identity") {
  CHECK(realify(HermitianMatrix::identity(2)).isApprox(Matrix::Identity(4, 4)));
}

TEST_CASE("realify doubles the spectrum") {
  CMatrix H(2, 2);
  H << Complex(0, 0), Complex(0, 1), Complex(0, -1), Complex(0, 0);
  const Vector ev = sorted_eigs(realify(HermitianMatrix(H)));
  CHECK(ev(0) == doctest::Approx(-1.0));
  CHECK(ev(1) == doctest::Approx(-1.0));
  CHECK(ev(2) == doctest::Approx(1.0));
  CHECK(ev(3) == doctest::Approx(1.0));
}

TEST_CASE("realify of an outer product is PSD with rank two") {
  model::Philox g(1);
  const CVector h = random_vector(3, g);
  const Vector ev = sorted_eigs(realify(HermitianMatrix::outer(h)));
  CHECK(ev(0) > -1e-12);
  int rank = 0;
  for (int k = 0; k < ev.size(); ++k) rank += ev(k) > 1e-9 * ev.maxCoeff();
  CHECK(rank == 2);
}

TEST_CASE("realify preserves the minimum eigenvalue and the quadratic form") {
  model::Philox g(2);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 5;
    const HermitianMatrix H(random_hermitian(n, g));
    CHECK(min_eigenvalue(realify(H)) == doctest::Approx(H.min_eigenvalue()).epsilon(1e-10));
    const CVector x = random_vector(n, g);
    Vector xr(2 * n);
    xr << x.real(), x.imag();
    CHECK(xr.dot(realify(H) * xr) == doctest::Approx(H.quadratic_form(x)).epsilon(1e-10));
  }
}

TEST_CASE("non-Hermitian input is rejected") {
  CMatrix M(2, 2);
  M << 1, 2, 3, 4;
  CHECK_THROWS_AS(HermitianMatrix{M}, ValidationError);
  CMatrix D(2, 2);
  D << Complex(1, 1e-3), 0, 0, 1;  // complex diagonal
  CHECK_THROWS_AS(HermitianMatrix{D}, ValidationError);
}

TEST_CASE("matrix square roots") {
  model::Philox g(3);
  const CMatrix X = random_hermitian(3, g);
  const HermitianMatrix P(X * X.adjoint() + CMatrix::Identity(3, 3));
  const HermitianMatrix r = psd_sqrt(P);
  CHECK((r.matrix() * r.matrix() - P.matrix()).norm() < 1e-10);
  const HermitianMatrix ir = pd_inverse_sqrt(P);
  CHECK((ir.matrix() * P.matrix() * ir.matrix() - CMatrix::Identity(3, 3)).norm() < 1e-10);
  CHECK_THROWS_AS(pd_inverse_sqrt(HermitianMatrix::zero(2)), ValidationError);
}

TEST_CASE("known SDPs reach their optima") {
  for (auto& s : oracle::known_sdps()) {
    CAPTURE(s.name);
    const auto t0 = std::chrono::steady_clock::now();
    const auto sol = solve_sdp(s.problem);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    CHECK(sol.status == s.expected);
    CHECK(ms < 50.0);
    if (s.expected != SolveStatus::Optimal) continue;
    CHECK(sol.relative_gap <= 1e-7);
    CHECK(std::abs(sol.primal_objective - s.optimum) <= 1e-6 * (1.0 + std::abs(s.optimum)));
    // Feasibility, weak duality and complementarity at the returned point.
    CHECK(min_block_eigenvalue(s.problem, sol.y) >= -1e-7);
    CHECK(sol.dual_objective <= sol.primal_objective + 1e-7 * (1.0 + std::abs(sol.primal_objective)));
    for (std::size_t b = 0; b < s.problem.blocks.size(); ++b) {
      const double comp = (s.problem.blocks[b].evaluate(sol.y).cwiseProduct(sol.block_duals[b])).sum();
      CHECK(std::abs(comp) <= 1e-6 * (1.0 + std::abs(sol.primal_objective)));
    }
  }
}

TEST_CASE("lambda_max matches power iteration on random matrices") {
  model::Philox g(4);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 6;
    Matrix A(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) A(r, c) = model::standard_normal(g);
    A = (0.5 * (A + A.transpose())).eval();
    ConicProblem pb;
    const int t = pb.add_variable("t", 1.0);
    LmiBlockSpec b(n);
    b.constant = -A;
    b.add_term(t, Matrix::Identity(n, n));
    pb.add_block(b);
    const auto sol = solve_sdp(pb);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.y(t) == doctest::Approx(oracle::power_iteration_lmax(A)).epsilon(1e-6));
  }
}

TEST_CASE("malformed problems are rejected") {
  ConicProblem pb;
  CHECK_THROWS_AS(solve_sdp(pb), ValidationError);
  const int y = pb.add_variable("y", 1.0);
  LmiBlockSpec b(2);
  b.add_term(y + 3, Matrix::Identity(2, 2));
  pb.add_block(b);
  CHECK_THROWS_AS(pb.validate(), ValidationError);
}

TEST_CASE("SDPA text round trip") {
  for (auto& s : oracle::known_sdps()) {
    CAPTURE(s.name);
    const ConicProblem back = from_sdpa(to_sdpa(s.problem));
    REQUIRE(back.num_vars == s.problem.num_vars);
    CHECK(back.objective.isApprox(s.problem.objective));
    REQUIRE(back.blocks.size() == s.problem.blocks.size());
    Vector y = Vector::LinSpaced(back.num_vars, 0.3, 1.7);
    for (std::size_t k = 0; k < back.blocks.size(); ++k) {
      CHECK((back.blocks[k].evaluate(y) - s.problem.blocks[k].evaluate(y)).norm() < 1e-12);
    }
  }
  CHECK_THROWS_AS(from_sdpa("2\n1\n2\n1.0\n"), ValidationError);
}

TEST_CASE("trust region: convex interior minimum") {
  TrsProblem p{CMatrix::Identity(2, 2), CVector::Zero(2), 0.0, Sense::Minimize};
  const auto r = trs_extremize(p);
  CHECK(r.value == doctest::Approx(0.0));
  CHECK(r.u.norm() < 1e-12);
}

TEST_CASE("trust region: rank-one closed form") {
  model::Philox g(5);
  for (int trial = 0; trial < 20; ++trial) {
    const CVector w = random_vector(3, g);
    const CVector h = random_vector(3, g) * (trial % 2 ? 1.0 : 0.2);
    const CMatrix W = w * w.adjoint();
    TrsProblem p{W, W * h, h.dot(W * h).real(), Sense::Minimize};
    const double a = std::abs(h.dot(w));
    CHECK(trs_extremize(p).value == doctest::Approx(std::pow(std::max(0.0, a - w.norm()), 2)).epsilon(1e-9));
    p.sense = Sense::Maximize;
    CHECK(trs_extremize(p).value == doctest::Approx(std::pow(a + w.norm(), 2)).epsilon(1e-9));
  }
}

TEST_CASE("trust region: random indefinite instances match brute force and satisfy KKT") {
  model::Philox g(6);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 1 + trial % 4;
    TrsProblem p{random_hermitian(n, g), random_vector(n, g), model::standard_normal(g),
                 trial % 2 ? Sense::Maximize : Sense::Minimize};
    const auto r = trs_extremize(p);
    CHECK(r.u.norm() <= 1.0 + 1e-10);
    CHECK(trs_objective(p, r.u) == doctest::Approx(r.value).epsilon(1e-8));
    const double brute = oracle::trs_bruteforce(p, 77 + trial, 5000, 10);
    CHECK(std::abs(r.value - brute) <= 1e-3 * (1.0 + std::abs(r.value)));
    const double s = p.sense == Sense::Minimize ? 1.0 : -1.0;
    const CVector kkt = s * p.M * r.u + r.multiplier * r.u + s * p.m;
    CHECK(r.multiplier >= 0.0);
    CHECK(kkt.norm() <= 1e-6 * (1.0 + p.M.norm()));
    CHECK(std::abs(r.multiplier * (1.0 - r.u.squaredNorm())) <= 1e-6);
  }
}

TEST_CASE("trust region: hard case") {
  // m orthogonal to the eigenvector of the smallest eigenvalue.
  CMatrix M = CMatrix::Zero(3, 3);
  M(0, 0) = -2.0;
  M(1, 1) = 1.0;
  M(2, 2) = 3.0;
  CVector m = CVector::Zero(3);
  m(1) = 0.5;
  TrsProblem p{M, m, 0.0, Sense::Minimize};
  const auto r = trs_extremize(p);
  CHECK(r.hard_case);
  CHECK(r.u.norm() == doctest::Approx(1.0));
  // Optimum: lambda = 2, u_1 = -m_1 / (1 + 2), remainder along e_0.
  const double u1 = -0.5 / 3.0;
  CHECK(r.value == doctest::Approx(-2.0 * (1 - u1 * u1) + u1 * u1 + 2 * 0.5 * u1).epsilon(1e-9));
  CHECK(std::abs(r.value - oracle::trs_bruteforce(p, 9)) <= 1e-3 * (1.0 + std::abs(r.value)));
}

TEST_CASE("trust region: nearly hard case stays on the sphere") {
  // A tiny component on the extreme eigenvector puts lambda within 1e-9 of -l1.
  CMatrix M = CMatrix::Zero(2, 2);
  M(0, 0) = -1.7;
  M(1, 1) = 0.4;
  CVector m(2);
  m << Complex(1e-9, 0.0), Complex(0.0, 0.3);
  const auto r = trs_extremize({M, m, 0.0, Sense::Minimize});
  CHECK(std::abs(r.u.norm() - 1.0) <= 1e-12);
  CHECK(((M + r.multiplier * CMatrix::Identity(2, 2)) * r.u + m).norm() <= 1e-9);
  CHECK(r.multiplier >= 1.7);
}

TEST_CASE("trust region rejects mismatched shapes") {
  TrsProblem p{CMatrix::Identity(2, 2), CVector::Zero(3), 0.0, Sense::Minimize};
  CHECK_THROWS_AS(trs_extremize(p), ValidationError);
}
