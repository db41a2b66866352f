#pragma once

#include <stdexcept>
#include <string>

namespace gnmwis {

/// Malformed input, out-of-range argument, or violated precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The numerics left their valid domain (non-finite state, non-convergence).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gnmwis
