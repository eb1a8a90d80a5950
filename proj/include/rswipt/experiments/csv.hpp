#pragma once

#include <string>

namespace rswipt::experiments {

// Shortest decimal form that round-trips exactly; "nan" / "inf" / "-inf"
// for non-finite values. Independent of the stream locale.
std::string format_double(double v);

}  // namespace rswipt::experiments
