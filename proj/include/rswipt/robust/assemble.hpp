#pragma once

#include <string>
#include <vector>

#include "rswipt/conic/sdp.hpp"
#include "rswipt/model/system.hpp"
#include "rswipt/robust/lmi.hpp"

namespace rswipt::robust {

using model::ChannelSet;
using model::SystemParams;

/// Positions of the decision variables in the assembled problem. Each W_i
/// takes N^2 consecutive coordinates (see hermitian_basis); absent entries
/// (nu and lambda/mu in nominal mode, diagonal t_bar / lambda) are -1.
struct VariableMap {
  struct Range {
    std::string name;
    int begin = 0;
    int count = 0;
  };

  int K = 0;
  int N = 0;
  bool robust = false;
  int num_vars = 0;
  std::vector<Range> ranges;  // in variable order

  std::vector<int> w_first;  // K
  std::vector<int> rho;      // K
  std::vector<Multiplier> nu;             // K
  std::vector<Multiplier> lambda, mu;     // K*K, row-major (i, j)
  std::vector<int> tbar, tlow;            // K*K, row-major (i, j)

  int at(const std::vector<int>& v, int i, int j) const { return v[static_cast<std::size_t>(i * K + j)]; }
  const Multiplier& at(const std::vector<Multiplier>& v, int i, int j) const {
    return v[static_cast<std::size_t>(i * K + j)];
  }
  int count_present() const;
  // 5K structural blocks (SINR, EH, W >= 0, rho in [0, 1]) plus one bound per
  // multiplier and slack, plus one coupling block per slack.
  int expected_block_count() const;
};

struct AssembledProblem {
  conic::ConicProblem problem;
  VariableMap map;
};

// Robust relaxation (requires an uncertain channel set; a nominal one throws
// ValidationError pointing at assemble_nominal).
AssembledProblem assemble_centralized(const SystemParams& params, const ChannelSet& ch);
// Same structure with e = 0: the slack couplings are scalar inequalities.
AssembledProblem assemble_nominal(const SystemParams& params, const ChannelSet& ch);

// Block builders shared with the per-agent problems. `interference` and
// `harvested` are 1x1 affine expressions of the slack sums.
AffineMatrix sinr_block(const SystemParams& params, const ChannelSet& ch, int i, const AffineMatrix& W, int rho_var,
                        const AffineMatrix& interference, Multiplier nu);
AffineMatrix sinr_block_nominal(const SystemParams& params, const ChannelSet& ch, int i, const AffineMatrix& W,
                                int rho_var, const AffineMatrix& interference);
AffineMatrix eh_block(const SystemParams& params, int i, int rho_var, const AffineMatrix& harvested);
// t_bar(i, j) >= max over the ellipsoid of (h + e)^H W_j (h + e).
AffineMatrix interference_block(const ChannelSet& ch, int i, int j, const AffineMatrix& Wj, int tbar_var,
                                Multiplier lambda);
// t_low(i, j) <= min over the ellipsoid of (h + e)^H W_j (h + e).
AffineMatrix energy_block(const ChannelSet& ch, int i, int j, const AffineMatrix& Wj, int tlow_var, Multiplier mu);
// Nominal counterparts: h^H W_j h - t_bar <= 0 and h^H W_j h - t_low >= 0.
AffineMatrix nominal_quadratic(const ChannelSet& ch, int i, int j, const AffineMatrix& Wj);

// Scale applied to a multiplier paired with shape B: 1 / lambda_max(B).
double multiplier_scale(const ChannelSet& ch, int i, int j);

}  // namespace rswipt::robust
