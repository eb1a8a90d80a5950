#include "rswipt/model/instance.hpp"

#include <cmath>

#include "rswipt/error.hpp"
#include "rswipt/model/rng.hpp"

namespace rswipt::model {

ChannelSet generate_instance(std::uint64_t seed, const SystemParams& params) {
  params.validate();
  const int K = params.K, N = params.N;
  std::vector<CVector> h(static_cast<std::size_t>(K * K));
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j < K; ++j) {
      Philox g(seed, static_cast<std::uint64_t>(i * K + j));
      CVector v(N);
      for (int n = 0; n < N; ++n) v(n) = complex_normal(g);
      h[i * K + j] = std::move(v);
    }
  }
  return ChannelSet::with_epsilon(K, N, std::move(h), params.epsilon);
}

Perturbations sample_uncertainty(const ChannelSet& ch, std::uint64_t seed, SamplingLaw law) {
  if (!ch.uncertain()) throw ValidationError("sample_uncertainty: channel set has no uncertainty region");
  const int K = ch.K(), N = ch.N();
  const double dim = 2.0 * N;
  Perturbations out(static_cast<std::size_t>(K * K));
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j < K; ++j) {
      Philox g(seed, static_cast<std::uint64_t>(i * K + j));
      CVector u(N);
      for (int n = 0; n < N; ++n) {
        const double re = standard_normal(g);
        const double im = standard_normal(g);
        u(n) = Complex(re, im);
      }
      double radius = 1.0;
      if (law == SamplingLaw::Interior) radius = std::pow(uniform01(g), 1.0 / dim);
      u *= radius / u.norm();
      out[i * K + j] = ch.ellipsoid_map(i, j).matrix() * u;
    }
  }
  return out;
}

}  // namespace rswipt::model
