#pragma once

#include <Eigen/Dense>

namespace rswipt::admm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Index conventions for the slack vectors exchanged between agents.
///
/// Local vector of agent i (length 2K):
///   [Tbar_i, tbar(j, i) for j != i, Tlow_i, tlow(j, i) for j != i]
/// where Tbar_i / Tlow_i stand for the sums of tbar(i, j) / tlow(i, j) over
/// j != i. Public vector (length 2K(K-1)): tbar(i, j) row-major over
/// (i, j != i), then tlow(i, j) in the same order.
int local_size(int K);
int public_size(int K);
int public_index(int K, int i, int j, bool energy);
// Position of tbar(m, i) (or tlow(m, i)) in agent i's local vector, m != i.
int local_cross_index(int K, int i, int m, bool energy);
inline int local_sum_index(int K, bool energy) { return energy ? K : 0; }

// Dense E_i (2K x 2K(K-1)); used by tests and oracles.
Matrix selection_matrix(int K, int i);
// E_i t without forming E_i.
Vector select(int K, int i, const Vector& t);

}  // namespace rswipt::admm
