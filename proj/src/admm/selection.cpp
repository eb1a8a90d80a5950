#include "rswipt/admm/selection.hpp"

#include "rswipt/error.hpp"

namespace rswipt::admm {

int local_size(int K) { return 2 * K; }

int public_size(int K) { return 2 * K * (K - 1); }

int public_index(int K, int i, int j, bool energy) {
  if (i == j) throw ValidationError("public_index: diagonal slacks are private");
  return (energy ? K * (K - 1) : 0) + i * (K - 1) + (j < i ? j : j - 1);
}

int local_cross_index(int K, int i, int m, bool energy) {
  if (i == m) throw ValidationError("local_cross_index: diagonal slacks are private");
  return local_sum_index(K, energy) + 1 + (m < i ? m : m - 1);
}

Matrix selection_matrix(int K, int i) {
  Matrix E = Matrix::Zero(local_size(K), public_size(K));
  for (int energy = 0; energy < 2; ++energy) {
    for (int j = 0; j < K; ++j) {
      if (j == i) continue;
      E(local_sum_index(K, energy), public_index(K, i, j, energy)) = 1.0;
      E(local_cross_index(K, i, j, energy), public_index(K, j, i, energy)) = 1.0;
    }
  }
  return E;
}

Vector select(int K, int i, const Vector& t) {
  if (t.size() != public_size(K)) throw ValidationError("select: public vector has wrong length");
  Vector out = Vector::Zero(local_size(K));
  for (int energy = 0; energy < 2; ++energy) {
    for (int j = 0; j < K; ++j) {
      if (j == i) continue;
      out(local_sum_index(K, energy)) += t(public_index(K, i, j, energy));
      out(local_cross_index(K, i, j, energy)) = t(public_index(K, j, i, energy));
    }
  }
  return out;
}

}  // namespace rswipt::admm
