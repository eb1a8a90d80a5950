#include "rswipt/robust/assemble.hpp"

#include <cmath>

#include "rswipt/error.hpp"

namespace rswipt::robust {

namespace {

AffineMatrix one_by_one(int var, double coeff = 1.0) { return AffineMatrix::scalar_variable(var, coeff); }

AffineMatrix real_constant(double v) { return AffineMatrix::scalar(Complex(v)); }

CMatrix column(const CVector& v) { return CMatrix(v); }

void check_dims(const SystemParams& params, const ChannelSet& ch) {
  params.validate();
  if (params.K != ch.K() || params.N != ch.N()) throw ValidationError("assembly: params and channels disagree on K/N");
}

class Builder {
 public:
  Builder(const SystemParams& params, const ChannelSet& ch, bool robust) : params_(params), ch_(ch) {
    out_.map.K = ch.K();
    out_.map.N = ch.N();
    out_.map.robust = robust;
  }

  AssembledProblem build() {
    declare_variables();
    add_blocks();
    auto& map = out_.map;
    map.num_vars = out_.problem.num_vars;
    if (static_cast<int>(out_.problem.blocks.size()) != map.expected_block_count()) {
      throw std::logic_error("assembly: block count does not match the variable map");
    }
    out_.problem.validate();
    return std::move(out_);
  }

 private:
  int begin_range(const std::string& name) {
    out_.map.ranges.push_back({name, out_.problem.num_vars, 0});
    return out_.problem.num_vars;
  }
  void end_range() { out_.map.ranges.back().count = out_.problem.num_vars - out_.map.ranges.back().begin; }

  int var(const std::string& role, double cost = 0.0) { return out_.problem.add_variable(role, cost); }

  static std::string pair(const char* name, int i, int j) {
    return std::string(name) + "[" + std::to_string(i) + "," + std::to_string(j) + "]";
  }

  void declare_variables() {
    const int K = ch_.K(), N = ch_.N();
    auto& map = out_.map;
    const bool robust = map.robust;
    map.w_first.assign(K, -1);
    map.rho.assign(K, -1);
    map.nu.assign(K, {});
    map.lambda.assign(K * K, {});
    map.mu.assign(K * K, {});
    map.tbar.assign(K * K, -1);
    map.tlow.assign(K * K, -1);

    begin_range("W");
    for (int i = 0; i < K; ++i) {
      map.w_first[i] = out_.problem.num_vars;
      // Diagonal coordinates first: their sum is tr(W_i).
      for (int t = 0; t < N * N; ++t) var("W[" + std::to_string(i) + "]", t < N ? 1.0 : 0.0);
    }
    end_range();
    begin_range("rho");
    for (int i = 0; i < K; ++i) map.rho[i] = var("rho[" + std::to_string(i) + "]");
    end_range();
    if (robust) {
      begin_range("nu");
      for (int i = 0; i < K; ++i) map.nu[i] = {var("nu[" + std::to_string(i) + "]"), multiplier_scale(ch_, i, i)};
      end_range();
      begin_range("lambda");
      for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j)
          if (i != j) map.lambda[i * K + j] = {var(pair("lambda", i, j)), multiplier_scale(ch_, i, j)};
      end_range();
      begin_range("mu");
      for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j) map.mu[i * K + j] = {var(pair("mu", i, j)), multiplier_scale(ch_, i, j)};
      end_range();
    }
    begin_range("tbar");
    for (int i = 0; i < K; ++i)
      for (int j = 0; j < K; ++j)
        if (i != j) map.tbar[i * K + j] = var(pair("tbar", i, j));
    end_range();
    begin_range("tlow");
    for (int i = 0; i < K; ++i)
      for (int j = 0; j < K; ++j) map.tlow[i * K + j] = var(pair("tlow", i, j));
    end_range();
  }

  void add(const AffineMatrix& m) { out_.problem.add_block(to_lmi_block(m)); }

  void add_blocks() {
    const int K = ch_.K(), N = ch_.N();
    const auto& map = out_.map;
    std::vector<AffineMatrix> W;
    for (int i = 0; i < K; ++i) W.push_back(hermitian_variable(map.w_first[i], N));

    for (int i = 0; i < K; ++i) {
      AffineMatrix interference = real_constant(0.0);
      AffineMatrix harvested = real_constant(0.0);
      for (int j = 0; j < K; ++j) {
        if (j != i) interference = interference + one_by_one(map.at(map.tbar, i, j));
        harvested = harvested + one_by_one(map.at(map.tlow, i, j));
      }
      if (map.robust) add(sinr_block(params_, ch_, i, W[i], map.rho[i], interference, map.nu[i]));
      else add(sinr_block_nominal(params_, ch_, i, W[i], map.rho[i], interference));
      add(eh_block(params_, i, map.rho[i], harvested));
    }
    for (int i = 0; i < K; ++i) {
      for (int j = 0; j < K; ++j) {
        if (map.robust) {
          if (j != i) add(interference_block(ch_, i, j, W[j], map.at(map.tbar, i, j), map.at(map.lambda, i, j)));
          add(energy_block(ch_, i, j, W[j], map.at(map.tlow, i, j), map.at(map.mu, i, j)));
        } else {
          const AffineMatrix q = nominal_quadratic(ch_, i, j, W[j]);
          if (j != i) add(one_by_one(map.at(map.tbar, i, j)) - q);
          add(q - one_by_one(map.at(map.tlow, i, j)));
        }
      }
    }
    for (int i = 0; i < K; ++i) add(W[i]);
    auto& pb = out_.problem;
    for (int i = 0; i < K; ++i) {
      pb.add_lower_bound(map.rho[i], 0.0);
      pb.add_upper_bound(map.rho[i], 1.0);
    }
    for (const auto& m : map.nu) if (m.var >= 0) pb.add_lower_bound(m.var, 0.0);
    for (const auto& m : map.lambda) if (m.var >= 0) pb.add_lower_bound(m.var, 0.0);
    for (const auto& m : map.mu) if (m.var >= 0) pb.add_lower_bound(m.var, 0.0);
    for (int v : map.tbar) if (v >= 0) pb.add_lower_bound(v, 0.0);
    for (int v : map.tlow) if (v >= 0) pb.add_lower_bound(v, 0.0);
  }

  const SystemParams& params_;
  const ChannelSet& ch_;
  AssembledProblem out_;
};

}  // namespace

int VariableMap::count_present() const {
  int n = 0;
  for (const auto& m : nu) n += m.var >= 0;
  for (const auto& m : lambda) n += m.var >= 0;
  for (const auto& m : mu) n += m.var >= 0;
  return n;
}

int VariableMap::expected_block_count() const {
  int slacks = 0;
  for (int v : tbar) slacks += v >= 0;
  for (int v : tlow) slacks += v >= 0;
  return 5 * K + count_present() + 2 * slacks;
}

double multiplier_scale(const ChannelSet& ch, int i, int j) { return 1.0 / ch.largest_shape_eigenvalue(i, j); }

AffineMatrix sinr_block(const SystemParams& params, const ChannelSet& ch, int i, const AffineMatrix& W, int rho_var,
                        const AffineMatrix& interference, Multiplier nu) {
  const int N = ch.N();
  const CVector& h = ch.h_hat(i, i);
  const double inv_gamma = 1.0 / params.gamma[i];
  QmiData d;
  d.A1 = one_by_one(rho_var);
  d.A2 = real_constant(std::sqrt(params.delta_sq[i]));
  d.A3 = AffineMatrix(1, N);
  d.A4 = (h.adjoint() * W * column(h)) * Complex(inv_gamma) - interference - real_constant(params.sigma_sq[i]);
  d.A5 = (h.adjoint() * W) * Complex(inv_gamma);
  d.A6 = W * Complex(inv_gamma);
  return qmi_to_lmi(d, ch.shape(i, i), nu);
}

AffineMatrix sinr_block_nominal(const SystemParams& params, const ChannelSet& ch, int i, const AffineMatrix& W,
                                int rho_var, const AffineMatrix& interference) {
  const AffineMatrix signal = nominal_quadratic(ch, i, i, W) * Complex(1.0 / params.gamma[i]);
  const AffineMatrix delta = real_constant(std::sqrt(params.delta_sq[i]));
  return AffineMatrix::blocks(
      {{one_by_one(rho_var), delta}, {delta, signal - interference - real_constant(params.sigma_sq[i])}});
}

AffineMatrix eh_block(const SystemParams& params, int i, int rho_var, const AffineMatrix& harvested) {
  const AffineMatrix root_eta = real_constant(std::sqrt(params.eta[i]));
  const AffineMatrix split = real_constant(params.zeta[i]) - one_by_one(rho_var, params.zeta[i]);
  return AffineMatrix::blocks(
      {{split, root_eta}, {root_eta, harvested + real_constant(params.sigma_sq[i])}});
}

AffineMatrix nominal_quadratic(const ChannelSet& ch, int i, int j, const AffineMatrix& Wj) {
  const CVector& h = ch.h_hat(i, j);
  return h.adjoint() * Wj * column(h);
}

AffineMatrix interference_block(const ChannelSet& ch, int i, int j, const AffineMatrix& Wj, int tbar_var,
                                Multiplier lambda) {
  const CVector& h = ch.h_hat(i, j);
  const AffineMatrix c = -(Wj * column(h));
  const AffineMatrix d = one_by_one(tbar_var) - nominal_quadratic(ch, i, j, Wj);
  return s_lemma_lmi(-Wj, c, d, ch.shape(i, j), lambda);
}

AffineMatrix energy_block(const ChannelSet& ch, int i, int j, const AffineMatrix& Wj, int tlow_var, Multiplier mu) {
  const CVector& h = ch.h_hat(i, j);
  const AffineMatrix c = Wj * column(h);
  const AffineMatrix d = nominal_quadratic(ch, i, j, Wj) - one_by_one(tlow_var);
  return s_lemma_lmi(Wj, c, d, ch.shape(i, j), mu);
}

AssembledProblem assemble_centralized(const SystemParams& params, const ChannelSet& ch) {
  check_dims(params, ch);
  if (!ch.uncertain()) throw ValidationError("assemble_centralized: no channel uncertainty; use assemble_nominal");
  return Builder(params, ch, true).build();
}

AssembledProblem assemble_nominal(const SystemParams& params, const ChannelSet& ch) {
  check_dims(params, ch);
  return Builder(params, ch, false).build();
}

}  // namespace rswipt::robust
