#pragma once

#include <stdexcept>
#include <string>

namespace cartonfold {

// Malformed or inconsistent input data (spec files, overrides, angles).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was invoked outside its contract, e.g. folding a joint twice.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The carton has nothing to fold.
class EmptyProblemError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A configured resource limit was exceeded and no fallback was permitted.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cartonfold
