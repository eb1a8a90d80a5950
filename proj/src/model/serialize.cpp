#include "rswipt/model/serialize.hpp"

#include "rswipt/error.hpp"

namespace rswipt::model {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError("instance json: " + msg);
}

std::vector<double> doubles(const Json& j, const char* key, int K) {
  require(j.contains(key), std::string("missing '") + key + "'");
  const Json& v = j.at(key);
  if (v.is_number()) return std::vector<double>(K, v.get<double>());
  require(v.is_array() && static_cast<int>(v.size()) == K, std::string("'") + key + "' must be a number or K numbers");
  return v.get<std::vector<double>>();
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(), "complex values are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json vector_to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(complex_to_json(v(k)));
  return out;
}

CVector vector_from_json(const Json& j) {
  require(j.is_array(), "vector must be an array");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = complex_from_json(j[k]);
  return v;
}

Json matrix_to_json(const CMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r).transpose()));
  return out;
}

CMatrix matrix_from_json(const Json& j) {
  require(j.is_array(), "matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  CMatrix m(rows, rows ? static_cast<Eigen::Index>(j[0].size()) : 0);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const CVector row = vector_from_json(j[static_cast<std::size_t>(r)]);
    require(row.size() == m.cols(), "ragged matrix");
    m.row(r) = row.transpose();
  }
  return m;
}

Json params_to_json(const SystemParams& p) {
  return Json{{"K", p.K},           {"N", p.N},         {"sigma_sq_mw", p.sigma_sq}, {"delta_sq_mw", p.delta_sq},
              {"zeta", p.zeta},     {"gamma", p.gamma}, {"eta_mw", p.eta},           {"epsilon", p.epsilon}};
}

SystemParams params_from_json(const Json& j) {
  require(j.is_object(), "params must be an object");
  SystemParams p;
  p.K = j.at("K").get<int>();
  p.N = j.at("N").get<int>();
  require(p.K >= 1 && p.N >= 1, "K and N must be >= 1");
  p.sigma_sq = doubles(j, "sigma_sq_mw", p.K);
  p.delta_sq = doubles(j, "delta_sq_mw", p.K);
  p.zeta = doubles(j, "zeta", p.K);
  p.gamma = doubles(j, "gamma", p.K);
  p.eta = doubles(j, "eta_mw", p.K);
  p.epsilon = j.value("epsilon", 0.0);
  p.validate();
  return p;
}

Json instance_to_json(const SystemParams& p, const ChannelSet& ch) {
  Json links = Json::array();
  for (int i = 0; i < ch.K(); ++i) {
    for (int j = 0; j < ch.K(); ++j) {
      Json l{{"rx", i}, {"tx", j}, {"h_hat", vector_to_json(ch.h_hat(i, j))}};
      if (ch.uncertain() && !ch.epsilon()) l["B"] = matrix_to_json(ch.shape(i, j).matrix());
      links.push_back(std::move(l));
    }
  }
  return Json{{"schema", kSchemaVersion}, {"params", params_to_json(p)}, {"links", std::move(links)}};
}

std::pair<SystemParams, ChannelSet> instance_from_json(const Json& j) {
  require(j.is_object() && j.value("schema", "") == kSchemaVersion, "schema must be \"v1\"");
  SystemParams p = params_from_json(j.at("params"));
  const int K = p.K, N = p.N;
  const Json& links = j.at("links");
  require(links.is_array() && static_cast<int>(links.size()) == K * K, "expected K*K links");
  std::vector<CVector> h(static_cast<std::size_t>(K * K));
  std::vector<HermitianMatrix> shapes;
  std::vector<bool> seen(h.size(), false);
  bool explicit_shapes = false;
  for (const auto& l : links) {
    const int rx = l.at("rx").get<int>(), tx = l.at("tx").get<int>();
    require(rx >= 0 && rx < K && tx >= 0 && tx < K, "link index out of range");
    const auto idx = static_cast<std::size_t>(rx * K + tx);
    require(!seen[idx], "duplicate link");
    seen[idx] = true;
    h[idx] = vector_from_json(l.at("h_hat"));
    require(h[idx].size() == N, "h_hat length != N");
    if (l.contains("B")) {
      if (shapes.empty()) shapes.assign(h.size(), HermitianMatrix::zero(N));
      explicit_shapes = true;
      shapes[idx] = HermitianMatrix(matrix_from_json(l.at("B")), 1e-9);
    }
  }
  if (explicit_shapes) return {p, ChannelSet(K, N, std::move(h), std::move(shapes))};
  return {p, ChannelSet::with_epsilon(K, N, std::move(h), p.epsilon)};
}

Json design_to_json(const Design& d) {
  Json w = Json::array();
  for (const auto& v : d.w) w.push_back(vector_to_json(v));
  return Json{{"w", std::move(w)}, {"rho", d.rho}};
}

Design design_from_json(const Json& j) {
  Design d;
  for (const auto& v : j.at("w")) d.w.push_back(vector_from_json(v));
  d.rho = j.at("rho").get<std::vector<double>>();
  return d;
}

}  // namespace rswipt::model
