#pragma once

#include <stdexcept>
#include <string>

namespace toric {

/// Rejected user input: malformed data or a violated precondition.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal cross-check failed. This always indicates a bug, never bad input.
class TheoryViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace toric
