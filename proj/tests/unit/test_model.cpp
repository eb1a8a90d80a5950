#include <doctest.h>

#include <cmath>

#include "rswipt/error.hpp"
#include "rswipt/model/evaluate.hpp"
#include "rswipt/model/instance.hpp"
#include "rswipt/model/rng.hpp"
#include "rswipt/model/serialize.hpp"

using namespace rswipt;
using namespace rswipt::model;

namespace {

SystemParams default_params(int K, int N, double eps) {
  return SystemParams::uniform(K, N, dbm_to_mw(-70), dbm_to_mw(-50), 0.25, db_to_ratio(4), dbm_to_mw(-5), eps);
}

Design random_design(int K, int N, Philox& g, double scale = 1.0) {
  Design d;
  for (int i = 0; i < K; ++i) {
    CVector w(N);
    for (int k = 0; k < N; ++k) w(k) = scale * complex_normal(g);
    d.w.push_back(w);
    d.rho.push_back(0.2 + 0.6 * uniform01(g));
  }
  return d;
}

}  // namespace

TEST_CASE("Philox4x32-10 known answers") {
  // Reference vectors of the Random123 distribution.
  auto zero = Philox::block({0, 0, 0, 0}, {0, 0});
  CHECK(zero == std::array<std::uint32_t, 4>{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  auto ones = Philox::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff});
  CHECK(ones == std::array<std::uint32_t, 4>{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  auto pi = Philox::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0});
  CHECK(pi == std::array<std::uint32_t, 4>{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("generator streams are deterministic and distinct") {
  Philox a(42, 3), b(42, 3), c(42, 4), d(43, 3);
  for (int k = 0; k < 10; ++k) {
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
    CHECK(x != d());
  }
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("unit conversions round trip") {
  for (double dbm : {-70.0, -5.0, 0.0, 13.7}) {
    CHECK(mw_to_dbm(dbm_to_mw(dbm)) == doctest::Approx(dbm).epsilon(1e-12));
    CHECK(ratio_to_db(db_to_ratio(dbm)) == doctest::Approx(dbm).epsilon(1e-12));
  }
  CHECK(dbm_to_mw(0.0) == 1.0);
  CHECK(db_to_ratio(10.0) == doctest::Approx(10.0));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(SystemParams::uniform(0, 1, 1, 1, 0.5, 1, 1, 0), ValidationError);
  CHECK_THROWS_AS(SystemParams::uniform(1, 1, 1, 1, 1.5, 1, 1, 0), ValidationError);
  CHECK_THROWS_AS(SystemParams::uniform(1, 1, -1, 1, 0.5, 1, 1, 0), ValidationError);
  CHECK_THROWS_AS(SystemParams::uniform(1, 1, 1, 1, 0.5, 1, 1, -0.1), ValidationError);
  CHECK_NOTHROW(SystemParams::uniform(1, 1, 1, 1, 0.5, 1, 0, 0));
}

TEST_CASE("instances are reproducible and carry the ellipsoid shape") {
  const auto p = default_params(2, 3, 0.1);
  const auto a = generate_instance(9, p), b = generate_instance(9, p), c = generate_instance(10, p);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(a.h_hat(i, j) == b.h_hat(i, j));
      CHECK(a.h_hat(i, j) != c.h_hat(i, j));
      CHECK(a.shape(i, j).matrix().isApprox(100.0 * CMatrix::Identity(3, 3)));
    }
  CHECK(!generate_instance(9, default_params(2, 3, 0.0)).uncertain());
}

TEST_CASE("channel entries have unit variance") {
  const auto p = default_params(1, 4, 0.0);
  double sum = 0.0;
  const int draws = 100000;
  for (int s = 0; s < draws / 4; ++s) sum += generate_instance(s, p).h_hat(0, 0).squaredNorm();
  CHECK(sum / draws == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("nominal evaluation examples") {
  const auto p = default_params(2, 2, 0.0);
  Philox g(1);
  const auto ch = generate_instance(1, p);
  Design d = random_design(2, 2, g);
  d.w[1].setZero();
  const auto q = evaluate_nominal(p, ch, d);
  const double s = std::norm(ch.h_hat(0, 0).dot(d.w[0]));
  CHECK(q[0].sinr == doctest::Approx(s / (p.sigma_sq[0] + p.delta_sq[0] / d.rho[0])));
  d.rho[0] = 1.0;
  CHECK(evaluate_nominal(p, ch, d)[0].eh == 0.0);
  d.rho[0] = 0.0;
  CHECK(evaluate_nominal(p, ch, d)[0].sinr == 0.0);
  for (auto& w : d.w) w.setZero();
  d.rho = {0.5, 0.5};
  CHECK(evaluate_nominal(p, ch, d)[1].eh == doctest::Approx(0.25 * 0.5 * p.sigma_sq[1]));
  d.w[0].resize(3);
  CHECK_THROWS_AS(evaluate_nominal(p, ch, d), ValidationError);
}

TEST_CASE("worst case without uncertainty equals the nominal evaluation") {
  const auto p = default_params(2, 3, 0.0);
  Philox g(2);
  const auto ch = generate_instance(3, p);
  const Design d = random_design(2, 3, g);
  const auto q = evaluate_nominal(p, ch, d);
  const auto r = worst_case_report(p, ch, d);
  for (int i = 0; i < 2; ++i) {
    CHECK(r.rx[i].worst_sinr == doctest::Approx(q[i].sinr).epsilon(1e-12));
    CHECK(r.rx[i].worst_eh == doctest::Approx(q[i].eh).epsilon(1e-12));
  }
}

TEST_CASE("rank-one closed form agrees with the trust-region extremes") {
  const auto p = default_params(2, 4, 0.3);
  Philox g(3);
  for (int s = 0; s < 10; ++s) {
    const auto ch = generate_instance(s, p);
    const CVector w = random_design(1, 4, g).w[0];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const auto a = link_extremes(ch, i, j, HermitianMatrix::outer(w));
        const auto b = link_extremes_rank_one(ch, i, j, w);
        CHECK(a.min == doctest::Approx(b.min).epsilon(1e-9).scale(b.max));
        CHECK(a.max == doctest::Approx(b.max).epsilon(1e-9));
        // The reported maximizer attains the value and lies on the ellipsoid.
        const CVector h = ch.h_hat(i, j) + b.argmax;
        CHECK(std::norm(h.dot(w)) == doctest::Approx(b.max).epsilon(1e-9));
        CHECK(ch.shape(i, j).quadratic_form(b.argmax) <= 1.0 + 1e-9);
        CHECK(ch.shape(i, j).quadratic_form(a.argmin) <= 1.0 + 1e-9);
      }
  }
}

TEST_CASE("worst case dominates sampled perturbations") {
  const auto p = default_params(2, 3, 0.2);
  Philox g(4);
  const auto ch = generate_instance(5, p);
  const Design d = random_design(2, 3, g);
  const auto r = worst_case_report(p, ch, d);
  const auto nominal = evaluate_nominal(p, ch, d);
  for (int s = 0; s < 10000; ++s) {
    const auto errors = sample_uncertainty(ch, derive_seed(7, s), s % 2 ? SamplingLaw::Boundary : SamplingLaw::Interior);
    const auto q = evaluate_nominal(p, ch, d, &errors);
    for (int i = 0; i < 2; ++i) {
      REQUIRE(q[i].sinr >= r.rx[i].worst_sinr * (1 - 1e-12));
      REQUIRE(q[i].eh >= r.rx[i].worst_eh * (1 - 1e-12));
    }
  }
  for (int i = 0; i < 2; ++i) {
    CHECK(r.rx[i].worst_sinr <= nominal[i].sinr);
    CHECK(r.rx[i].worst_eh <= nominal[i].eh);
    // Attaining errors reproduce the worst case.
    Perturbations e(4, CVector::Zero(3));
    for (int j = 0; j < 2; ++j) e[i * 2 + j] = r.rx[i].sinr_errors[j];
    CHECK(evaluate_nominal(p, ch, d, &e)[i].sinr == doctest::Approx(r.rx[i].worst_sinr).epsilon(1e-8));
    for (int j = 0; j < 2; ++j) e[i * 2 + j] = r.rx[i].eh_errors[j];
    CHECK(evaluate_nominal(p, ch, d, &e)[i].eh == doctest::Approx(r.rx[i].worst_eh).epsilon(1e-8));
  }
}

TEST_CASE("worst case degrades monotonically with the uncertainty radius") {
  const auto p = default_params(2, 4, 0.0);
  Philox g(5);
  const auto base = generate_instance(6, p);
  const Design d = random_design(2, 4, g);
  double prev_sinr = INFINITY, prev_eh = INFINITY;
  for (double eps : {0.0, 0.05, 0.1}) {
    const auto r = worst_case_report(p, base.with_uncertainty(eps), d);
    CHECK(r.rx[0].worst_sinr <= prev_sinr);
    CHECK(r.rx[0].worst_eh <= prev_eh);
    prev_sinr = r.rx[0].worst_sinr;
    prev_eh = r.rx[0].worst_eh;
  }
}

TEST_CASE("scaling a beamformer scales the extremes quadratically") {
  const auto p = default_params(1, 3, 0.2);
  const auto ch = generate_instance(8, p);
  Philox g(6);
  const CVector w = random_design(1, 3, g).w[0];
  const auto a = link_extremes_rank_one(ch, 0, 0, w);
  const auto b = link_extremes_rank_one(ch, 0, 0, 1.7 * w);
  CHECK(b.max == doctest::Approx(1.7 * 1.7 * a.max));
  CHECK(b.min == doctest::Approx(1.7 * 1.7 * a.min));
}

TEST_CASE("uncertainty samples stay in the ellipsoid with the right moments") {
  const auto p = default_params(1, 4, 0.1);
  const auto ch = generate_instance(1, p);
  const int n = 100000;
  double sq = 0.0;
  CVector mean = CVector::Zero(4);
  for (int s = 0; s < n; ++s) {
    const CVector e = sample_uncertainty(ch, derive_seed(3, s))[0];
    REQUIRE(ch.shape(0, 0).quadratic_form(e) <= 1.0 + 1e-12);
    sq += e.squaredNorm();
    mean += e;
  }
  // Uniform in the ball of radius eps in R^8: E||e||^2 = eps^2 * 8 / 10.
  CHECK(sq / n == doctest::Approx(0.008).epsilon(0.05));
  // Each real coordinate has variance eps^2 / 10; allow three standard errors.
  const double se = std::sqrt(0.01 / 10.0 / n);
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(mean(k).real() / n) < 3 * se);
    CHECK(std::abs(mean(k).imag() / n) < 3 * se);
  }
  const CVector b = sample_uncertainty(ch, 5, SamplingLaw::Boundary)[0];
  CHECK(ch.shape(0, 0).quadratic_form(b) == doctest::Approx(1.0));
  CHECK_THROWS_AS(sample_uncertainty(ch.nominal(), 1), ValidationError);
}

TEST_CASE("instance and design JSON round trip") {
  const auto p = default_params(2, 3, 0.05);
  const auto ch = generate_instance(12, p);
  const auto [p2, ch2] = instance_from_json(Json::parse(instance_to_json(p, ch).dump()));
  CHECK(p2.K == 2);
  CHECK(p2.gamma == p.gamma);
  CHECK(ch2.epsilon().value() == 0.05);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(ch2.h_hat(i, j) == ch.h_hat(i, j));
      CHECK(ch2.shape(i, j).matrix() == ch.shape(i, j).matrix());
    }
  Philox g(7);
  const Design d = random_design(2, 3, g);
  const Design d2 = design_from_json(Json::parse(design_to_json(d).dump()));
  CHECK(d2.w[1] == d.w[1]);
  CHECK(d2.rho == d.rho);
  CHECK_THROWS_AS(instance_from_json(Json{{"schema", "v0"}}), ValidationError);
}
