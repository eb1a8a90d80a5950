#pragma once

#include <ostream>

namespace rswipt::tools {

// Quick oracle cross-checks on small instances; returns the number of failed
// checks.
int run_selftest(std::ostream& os);

}  // namespace rswipt::tools
