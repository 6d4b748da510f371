#pragma once

#include <stdexcept>
#include <string>

namespace hilbert {

/// A computation would exceed a configured size cap (matrix columns, search
/// space, tensor degree). The CLI maps this to exit code 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A proven lower bound on a Hilbert series was violated. This always means a
/// bug in the engine, never a mathematical finding.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hilbert
