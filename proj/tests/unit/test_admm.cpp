#include <doctest.h>

#include <bit>
#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "rswipt/admm/consensus.hpp"
#include "rswipt/admm/runner.hpp"
#include "rswipt/error.hpp"
#include "rswipt/model/instance.hpp"
#include "rswipt/model/rng.hpp"
#include "rswipt/robust/centralized.hpp"

using namespace rswipt;
using namespace rswipt::admm;
using model::dbm_to_mw;
using model::db_to_ratio;

namespace {

model::SystemParams params(int K, int N, double eps, double gamma_db = 4, double eta_dbm = -5) {
  return model::SystemParams::uniform(K, N, dbm_to_mw(-70), dbm_to_mw(-50), 0.25, db_to_ratio(gamma_db),
                                      dbm_to_mw(eta_dbm), eps);
}

Vector random_vector(model::Philox& g, int n) {
  Vector v(n);
  for (int k = 0; k < n; ++k) v(k) = model::standard_normal(g);
  return v;
}

Vector dense_consensus(int K, const std::vector<Vector>& local, const std::vector<Vector>& betas, double c) {
  Matrix lhs = Matrix::Zero(public_size(K), public_size(K));
  Vector rhs = Vector::Zero(public_size(K));
  for (int i = 0; i < K; ++i) {
    const Matrix E = selection_matrix(K, i);
    lhs += E.transpose() * E;
    rhs += E.transpose() * (local[i] - betas[i] / c);
  }
  return lhs.ldlt().solve(rhs);
}

double centralized_power(const model::SystemParams& p, const model::ChannelSet& ch) {
  const auto rs = robust::solve_centralized(robust::assemble_centralized(p, ch));
  REQUIRE(rs.ok());
  return rs.objective;
}

}  // namespace

TEST_CASE("selection matrices: E^T E is identity plus one all-ones block per receiver") {
  for (int K = 2; K <= 4; ++K) {
    Matrix sum = Matrix::Zero(public_size(K), public_size(K));
    for (int i = 0; i < K; ++i) {
      const Matrix E = selection_matrix(K, i);
      CHECK(E.rows() == local_size(K));
      sum += E.transpose() * E;
    }
    for (bool energy : {false, true})
      for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j)
          for (int a = 0; a < K; ++a)
            for (int b = 0; b < K; ++b) {
              if (i == j || a == b) continue;
              for (bool energy2 : {false, true}) {
                const double expect = (energy == energy2 && i == a) ? (j == b ? 2.0 : 1.0) : 0.0;
                REQUIRE(sum(public_index(K, i, j, energy), public_index(K, a, b, energy2)) == expect);
              }
            }
    model::Philox g(K);
    const Vector t = random_vector(g, public_size(K));
    for (int i = 0; i < K; ++i) CHECK((select(K, i, t) - selection_matrix(K, i) * t).norm() == 0.0);
  }
  CHECK_THROWS_AS(public_index(3, 1, 1, false), ValidationError);
}

TEST_CASE("consensus update matches the normal equations") {
  model::Philox g(7);
  for (int K = 2; K <= 4; ++K) {
    std::vector<Vector> local, betas;
    for (int i = 0; i < K; ++i) {
      local.push_back(random_vector(g, local_size(K)));
      betas.push_back(random_vector(g, local_size(K)));
    }
    for (double c : {0.5, 1.0, 3.0}) {
      const Vector x = consensus_update(K, local, betas, c);
      CHECK((x - dense_consensus(K, local, betas, c)).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("consistent local vectors reproduce the public vector") {
  const int K = 3;
  model::Philox g(8);
  const Vector t0 = random_vector(g, public_size(K));
  std::vector<Vector> local, betas(K, Vector::Zero(local_size(K)));
  for (int i = 0; i < K; ++i) local.push_back(select(K, i, t0));
  const Vector x = consensus_update(K, local, betas, 2.0);
  CHECK((x - t0).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(consensus_residual(K, x, local) <= 1e-12);
  dual_update(K, betas, x, local, 2.0);
  for (const auto& b : betas) CHECK(b.cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("dual update example") {
  const int K = 2;
  Vector t(2 * K * (K - 1));
  t << 1.0, 2.0, 3.0, 4.0;  // tbar(0,1), tbar(1,0), tlow(0,1), tlow(1,0)
  std::vector<Vector> local(K, Vector::Zero(local_size(K)));
  std::vector<Vector> betas(K, Vector::Ones(local_size(K)));
  dual_update(K, betas, t, local, 0.5);
  // Agent 0 sees [Tbar_0 = tbar(0,1), tbar(1,0), Tlow_0 = tlow(0,1), tlow(1,0)].
  CHECK(betas[0](0) == 1.5);
  CHECK(betas[0](1) == 2.0);
  CHECK(betas[0](2) == 2.5);
  CHECK(betas[0](3) == 3.0);
  CHECK(betas[1](0) == 2.0);
  CHECK(betas[1](1) == 1.5);
  CHECK(betas[1](2) == 3.0);
  CHECK(betas[1](3) == 2.5);
  CHECK(consensus_residual(K, t, local) == 4.0);
}

TEST_CASE("message encoding") {
  const int K = 3;
  Message m{7, 2, Vector(local_size(K))};
  m.values << 1.0, -0.0, 1e-300, std::nextafter(1.0, 2.0), -3.5, 42.0;
  const auto bytes = encode(m);
  REQUIRE(bytes.size() == 16 + 16 * K);
  CHECK(bytes[0] == 7);
  for (int k = 1; k < 8; ++k) CHECK(bytes[k] == 0);
  CHECK(bytes[8] == 2);
  const Message back = decode(bytes);
  CHECK(back.round == 7);
  CHECK(back.agent == 2);
  REQUIRE(back.values.size() == m.values.size());
  for (int k = 0; k < m.values.size(); ++k) {
    CHECK(std::bit_cast<std::uint64_t>(back.values(k)) == std::bit_cast<std::uint64_t>(m.values(k)));
  }
  CHECK_THROWS_AS(decode(std::vector<std::uint8_t>(20)), ValidationError);
}

TEST_CASE("bus delivers one round in agent order") {
  BroadcastBus bus(3);
  for (std::uint64_t a : {2u, 0u, 1u}) bus.post({0, a, Vector::Constant(6, double(a))});
  const auto got = bus.deliver(0);
  REQUIRE(got.size() == 3);
  for (int a = 0; a < 3; ++a) {
    CHECK(got[a].agent == static_cast<std::uint64_t>(a));
    CHECK(got[a].values(0) == a);
  }
  CHECK(bus.messages_sent() == 3);
  CHECK(bus.bytes_sent() == 3 * 64);
  bus.post({1, 0, Vector::Zero(6)});
  CHECK_THROWS_AS(bus.deliver(1), std::logic_error);
}

TEST_CASE("local view keeps only the links into the agent's transmitter") {
  const auto p = params(3, 2, 0.1);
  const auto ch = model::generate_instance(3, p);
  const auto v = local_view(ch, 1);
  for (int r = 0; r < 3; ++r)
    for (int t = 0; t < 3; ++t) {
      if (t == 1) {
        CHECK(v.h_hat(r, t) == ch.h_hat(r, t));
        CHECK(v.shape(r, t).matrix() == ch.shape(r, t).matrix());
      } else {
        CHECK(v.h_hat(r, t).norm() == 0.0);
      }
    }
}

TEST_CASE("single pair: ADMM reduces to the single-link problem") {
  const auto p = model::SystemParams::uniform(1, 1, 1e-7, 1e-5, 0.25, 2.0, 0.1, 0.05);
  const auto ch = model::generate_instance(501, p);
  REQUIRE(std::abs(ch.h_hat(0, 0)(0)) > 0.1);
  const auto res = run_admm(p, ch);
  CHECK(res.status == AdmmStatus::Converged);
  CHECK(res.objective == doctest::Approx(oracle::single_link_min_power(p, ch)).epsilon(1e-3));
}

TEST_CASE("large penalty pins the local vector to the public one") {
  const auto p = params(2, 4, 0.05);
  const auto ch = model::generate_instance(4, p);
  const auto rs = robust::solve_centralized(robust::assemble_centralized(p, ch));
  REQUIRE(rs.ok());
  const int K = 2;
  Vector t_now(public_size(K));
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) {
      if (i == j) continue;
      t_now(public_index(K, i, j, false)) = rs.tbar[i * K + j];
      t_now(public_index(K, i, j, true)) = rs.tlow[i * K + j];
    }
  for (int i = 0; i < K; ++i) {
    const auto loc = solve_local(p, local_view(ch, i), i, t_now, Vector::Zero(local_size(K)), 1e4);
    REQUIRE(loc.status == conic::SolveStatus::Optimal);
    const Vector target = select(K, i, t_now);
    CHECK((loc.t - target).cwiseAbs().maxCoeff() <= 1e-3 * std::max(1.0, target.cwiseAbs().maxCoeff()));
    CHECK(loc.power >= 0.0);
  }
  CHECK_THROWS_AS(solve_local(p, local_view(ch, 0), 0, t_now, Vector::Zero(4), 0.0), ValidationError);
}

TEST_CASE("ADMM reaches the centralized optimum") {
  const auto p = params(2, 4, 0.05);
  for (int s = 0; s < 2; ++s) {
    const auto ch = model::generate_instance(30 + s, p);
    const double ref = centralized_power(p, ch);
    const auto res = run_admm(p, ch, {}, ref);
    CHECK(res.status == AdmmStatus::Converged);
    CHECK(res.objective == doctest::Approx(ref).epsilon(1e-4));
    CHECK(res.trace.back().residual <= 1e-5);
    CHECK(std::abs(res.trace.back().delta_power) <= 1e-4);
    CHECK(iterations_to(res.trace, 1e-2) >= 0);
    CHECK(iterations_to(res.trace, 1e-2) <= res.iterations());
  }
}

TEST_CASE("parallel agents produce the sequential trace bit for bit") {
  const auto p = params(3, 3, 0.05);
  const auto ch = model::generate_instance(9, p);
  AdmmConfig cfg;
  cfg.max_iter = 8;
  const auto a = run_admm(p, ch, cfg);
  cfg.executor = Executor::Parallel;
  const auto b = run_admm(p, ch, cfg);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t q = 0; q < a.trace.size(); ++q) {
    CHECK(std::bit_cast<std::uint64_t>(a.trace[q].power) == std::bit_cast<std::uint64_t>(b.trace[q].power));
    CHECK(std::bit_cast<std::uint64_t>(a.trace[q].residual) == std::bit_cast<std::uint64_t>(b.trace[q].residual));
  }
  CHECK(a.t == b.t);
  // One broadcast per agent per round.
  for (std::size_t q = 0; q < a.trace.size(); ++q) {
    CHECK(a.trace[q].q == static_cast<int>(q));
    CHECK(a.trace[q].messages == 3 * (q + 1));
    CHECK(a.trace[q].bytes == 3 * (16 + 16 * 3) * (q + 1));
    CHECK(a.trace[q].millis == 0.0);
  }
}

TEST_CASE("the limit does not depend on the penalty parameter") {
  const auto p = params(2, 4, 0.05);
  const auto ch = model::generate_instance(12, p);
  const double ref = centralized_power(p, ch);
  for (double c : {0.5, 1.0, 5.0}) {
    AdmmConfig cfg;
    cfg.c = c;
    const auto res = run_admm(p, ch, cfg);
    CHECK(res.objective == doctest::Approx(ref).epsilon(2e-3));
  }
}

TEST_CASE("iterations_to counts the rounds after which the gap stays small") {
  std::vector<IterationRecord> trace(5);
  const double gaps[] = {0.5, 0.005, 0.02, 0.004, 0.001};
  for (int q = 0; q < 5; ++q) {
    trace[q].q = q;
    trace[q].delta_power = gaps[q];
  }
  CHECK(iterations_to(trace, 0.01) == 4);
  CHECK(iterations_to(trace, 0.1) == 2);
  CHECK(iterations_to(trace, 1e-4) == -1);
}
