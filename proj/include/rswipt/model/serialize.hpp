#pragma once

#include <string>
#include <utility>

#include <json.hpp>

#include "rswipt/model/system.hpp"

namespace rswipt::model {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "v1";

// Complex numbers are [re, im] pairs, vectors are arrays of pairs and
// matrices arrays of rows.
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);
Json vector_to_json(const CVector& v);
CVector vector_from_json(const Json& j);
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

Json params_to_json(const SystemParams& p);
SystemParams params_from_json(const Json& j);

// {"schema": "v1", "params": {...}, "links": [{"rx", "tx", "h_hat", "B"?}]}
Json instance_to_json(const SystemParams& p, const ChannelSet& ch);
std::pair<SystemParams, ChannelSet> instance_from_json(const Json& j);

Json design_to_json(const Design& d);
Design design_from_json(const Json& j);

}  // namespace rswipt::model
