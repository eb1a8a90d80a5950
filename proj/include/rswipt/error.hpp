#pragma once

#include <stdexcept>
#include <string>

namespace rswipt {

// Raised when inputs violate a documented precondition (shape, symmetry,
// sign). Solver outcomes are never reported through exceptions.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace rswipt
