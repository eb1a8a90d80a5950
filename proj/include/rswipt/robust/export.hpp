#pragma once

#include "rswipt/model/serialize.hpp"
#include "rswipt/robust/extract.hpp"

namespace rswipt::robust {

// W eigenvalues, rho, slacks and solver statistics; absent slacks are null.
model::Json relaxed_to_json(const RelaxedSolution& rs);
model::Json extraction_to_json(const ExtractionResult& ex);

}  // namespace rswipt::robust
