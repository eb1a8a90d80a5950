#include "rswipt/admm/consensus.hpp"

#include "rswipt/error.hpp"

namespace rswipt::admm {

namespace {

void check(int K, const std::vector<Vector>& local, double c) {
  if (!(c > 0.0)) throw ValidationError("ADMM penalty must be positive");
  if (static_cast<int>(local.size()) != K) throw ValidationError("expected one local vector per agent");
  for (const auto& v : local)
    if (v.size() != local_size(K)) throw ValidationError("local vector has wrong length");
}

}  // namespace

Vector consensus_update(int K, const std::vector<Vector>& local, const std::vector<Vector>& betas, double c) {
  check(K, local, c);
  check(K, betas, c);
  std::vector<Vector> g(K);
  for (int i = 0; i < K; ++i) g[i] = local[i] - betas[i] / c;
  Vector t(public_size(K));
  Vector r(K > 1 ? K - 1 : 0);
  for (int energy = 0; energy < 2; ++energy) {
    for (int i = 0; i < K; ++i) {
      int n = 0;
      for (int j = 0; j < K; ++j) {
        if (j == i) continue;
        r(n++) = g[j](local_cross_index(K, j, i, energy)) + g[i](local_sum_index(K, energy));
      }
      const double shift = r.sum() / K;
      n = 0;
      for (int j = 0; j < K; ++j) {
        if (j == i) continue;
        t(public_index(K, i, j, energy)) = r(n++) - shift;
      }
    }
  }
  return t;
}

void dual_update(int K, std::vector<Vector>& betas, const Vector& t, const std::vector<Vector>& local, double c) {
  check(K, local, c);
  check(K, betas, c);
  for (int i = 0; i < K; ++i) betas[i] += c * (select(K, i, t) - local[i]);
}

double consensus_residual(int K, const Vector& t, const std::vector<Vector>& local) {
  double r = 0.0;
  for (int i = 0; i < K; ++i) {
    const Vector d = select(K, i, t) - local[i];
    if (d.size() > 0) r = std::max(r, d.cwiseAbs().maxCoeff());
  }
  return r;
}

}  // namespace rswipt::admm
