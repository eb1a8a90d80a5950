#pragma once

#include <vector>

#include "rswipt/admm/selection.hpp"

namespace rswipt::admm {

// argmin_t (c/2) sum_i ||E_i t - t_i||^2 + sum_i beta_i^T E_i t.
// E^T E is I plus an all-ones block per group {tbar(i, j)}_{j != i}, so each
// group is solved in closed form: with g = t_i - beta_i / c and
// r_j = g_j[tbar(i, j)] + g_i[Tbar_i], x = r - (sum(r) / K) 1.
Vector consensus_update(int K, const std::vector<Vector>& local, const std::vector<Vector>& betas, double c);

// beta_i <- beta_i + c (E_i t - t_i), in place.
void dual_update(int K, std::vector<Vector>& betas, const Vector& t, const std::vector<Vector>& local, double c);

// max_i ||E_i t - t_i||_inf
double consensus_residual(int K, const Vector& t, const std::vector<Vector>& local);

}  // namespace rswipt::admm
