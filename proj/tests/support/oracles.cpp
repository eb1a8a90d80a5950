#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rswipt/model/rng.hpp"

namespace rswipt::oracle {

namespace {

using conic::CVector;

double objective(const conic::TrsProblem& p, const CVector& u) {
  const double sign = p.sense == conic::Sense::Minimize ? 1.0 : -1.0;
  return sign * conic::trs_objective(p, u);
}

CVector project(CVector u) {
  const double n = u.norm();
  return n > 1.0 ? CVector(u / n) : u;
}

CVector random_ball(int n, model::Philox& g) {
  CVector u(n);
  for (int k = 0; k < n; ++k) u(k) = model::complex_normal(g);
  const double r = std::pow(model::uniform01(g), 1.0 / (2.0 * n));
  return u * (r / u.norm());
}

}  // namespace

double trs_bruteforce(const conic::TrsProblem& p, std::uint64_t seed, int samples, int starts) {
  const int n = static_cast<int>(p.M.rows());
  model::Philox g(seed);
  std::vector<std::pair<double, CVector>> pool;
  for (int s = 0; s < samples; ++s) {
    CVector u = random_ball(n, g);
    if (s % 2 == 0) u /= std::max(u.norm(), 1e-300);  // half on the sphere
    pool.emplace_back(objective(p, u), std::move(u));
  }
  std::partial_sort(pool.begin(), pool.begin() + std::min<int>(starts, samples), pool.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
  const double sign = p.sense == conic::Sense::Minimize ? 1.0 : -1.0;
  const double lip = 2.0 * std::max(1e-12, p.M.cwiseAbs().rowwise().sum().maxCoeff());
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < std::min(starts, samples); ++s) {
    CVector u = pool[s].second;
    double f = pool[s].first;
    for (int it = 0; it < 5000; ++it) {
      // Gradient of u^H M u + 2 Re(m^H u) w.r.t. conj(u), times two.
      const CVector grad = sign * 2.0 * (p.M * u + p.m);
      CVector next = project(u - grad / lip);
      const double fn = objective(p, next);
      if (fn > f - 1e-15 * (1.0 + std::abs(f))) {
        f = std::min(f, fn);
        break;
      }
      u = std::move(next);
      f = fn;
    }
    best = std::min(best, f);
  }
  return sign * best;
}

double single_link_min_power(const model::SystemParams& p, const model::ChannelSet& ch) {
  const double eps = ch.epsilon().value_or(0.0);
  const double gain = std::pow(std::max(0.0, std::abs(ch.h_hat(0, 0)(0)) - eps), 2);
  if (gain <= 0.0) return std::numeric_limits<double>::infinity();
  const double s2 = p.sigma_sq[0], d2 = p.delta_sq[0], z = p.zeta[0], gm = p.gamma[0], et = p.eta[0];
  auto power = [&](double rho) {
    const double sinr = gm * (s2 + d2 / rho) / gain;
    const double eh = (et / (z * (1.0 - rho)) - s2) / gain;
    return std::max({0.0, sinr, eh});
  };
  const int grid = 20000;
  int best = 1;
  for (int k = 1; k < grid; ++k)
    if (power(static_cast<double>(k) / grid) < power(static_cast<double>(best) / grid)) best = k;
  double a = static_cast<double>(best - 1) / grid, b = static_cast<double>(best + 1) / grid;
  a = std::max(a, 1e-15);
  b = std::min(b, 1.0 - 1e-15);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 200; ++it) {
    const double c = b - phi * (b - a), d = a + phi * (b - a);
    if (power(c) <= power(d)) b = d;
    else a = c;
  }
  return power(0.5 * (a + b));
}

}  // namespace rswipt::oracle
