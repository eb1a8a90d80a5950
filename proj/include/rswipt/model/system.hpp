#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "rswipt/conic/hermitian.hpp"

namespace rswipt::model {

using conic::CMatrix;
using conic::Complex;
using conic::CVector;
using conic::HermitianMatrix;

// Unit conversions; all internal powers are in milliwatt.
inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }
inline double db_to_ratio(double db) { return std::pow(10.0, db / 10.0); }
inline double ratio_to_db(double r) { return 10.0 * std::log10(r); }

/// Per-receiver link budget and targets of a K-pair interference channel.
struct SystemParams {
  int K = 1;
  int N = 1;
  std::vector<double> sigma_sq;  // antenna noise, mW
  std::vector<double> delta_sq;  // decoder noise, mW
  std::vector<double> zeta;      // EH efficiency in (0, 1]
  std::vector<double> gamma;     // SINR target, linear
  std::vector<double> eta;       // EH target, mW
  double epsilon = 0.0;          // uncertainty radius when B = eps^-2 I

  static SystemParams uniform(int K, int N, double sigma_sq_mw, double delta_sq_mw, double zeta, double gamma,
                              double eta_mw, double epsilon);
  void validate() const;
};

/// Channel estimates h_hat(i, j) (Tx j -> Rx i) and error ellipsoids
/// {e : e^H B(i, j) e <= 1}. Without uncertainty the shapes are absent and
/// every worst case equals the nominal value. Immutable after construction.
class ChannelSet {
 public:
  ChannelSet() = default;
  // Row-major K*K link vectors; shapes empty for a nominal set.
  ChannelSet(int K, int N, std::vector<CVector> h_hat, std::vector<HermitianMatrix> shapes);
  static ChannelSet with_epsilon(int K, int N, std::vector<CVector> h_hat, double epsilon);

  int K() const { return K_; }
  int N() const { return N_; }
  bool uncertain() const { return !shapes_.empty(); }
  std::optional<double> epsilon() const { return epsilon_; }

  const CVector& h_hat(int i, int j) const { return h_[idx(i, j)]; }
  const HermitianMatrix& shape(int i, int j) const { return shapes_.at(idx(i, j)); }
  // B^{-1/2}, the map from the unit ball onto the ellipsoid.
  const HermitianMatrix& ellipsoid_map(int i, int j) const { return maps_.at(idx(i, j)); }
  double largest_shape_eigenvalue(int i, int j) const { return shape_lmax_.at(idx(i, j)); }

  ChannelSet nominal() const;
  ChannelSet with_uncertainty(double epsilon) const;

 private:
  int idx(int i, int j) const { return i * K_ + j; }
  int K_ = 0;
  int N_ = 0;
  std::vector<CVector> h_;
  std::vector<HermitianMatrix> shapes_;
  std::vector<HermitianMatrix> maps_;
  std::vector<double> shape_lmax_;
  std::optional<double> epsilon_;
};

/// Beamformers w_i and power-splitting ratios rho_i.
struct Design {
  std::vector<CVector> w;
  std::vector<double> rho;

  double total_power() const;
  void validate(int K, int N) const;
};

// Row-major K*K list of channel errors e(i, j).
using Perturbations = std::vector<CVector>;

}  // namespace rswipt::model
