#pragma once

#include <stdexcept>
#include <string>

namespace sparsemod {

// Invalid arguments are reported with std::invalid_argument. The types below
// cover the remaining failure classes the CLI maps to distinct exit codes.

/// A desk-scale size guard was exceeded (e.g. p too large for direct evaluation).
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A construction's cardinality threshold was not met for this input.
class PreconditionFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A proven inequality or self-verification failed. This is a finding, not a bug
/// in the caller.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search whose success the construction guarantees came back empty.
class SearchFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

}  // namespace sparsemod
