#pragma once

#include <stdexcept>

namespace dbc {

// Enumeration-size guard violations (frame too long for exhaustive sums).
// Kept distinct from std::invalid_argument so callers can map them to a
// dedicated exit code.
class guard_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dbc
