#pragma once
// Error taxonomy. The CLI maps each class onto an exit code.

#include <stdexcept>
#include <string>

namespace gks {

// Caller handed us something outside a documented precondition (exit 2).
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Truncation or π-precision is too small to certify a result (exit 3).
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A mathematical invariant failed to hold; always a bug somewhere (exit 4).
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

inline void ensure(bool ok, const std::string& what) {
  if (!ok) throw InvariantError(what);
}

}  // namespace gks
