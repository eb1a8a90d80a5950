#include "rswipt/experiments/csv.hpp"

#include <charconv>
#include <cmath>

namespace rswipt::experiments {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

}  // namespace rswipt::experiments
