#pragma once

#include <stdexcept>

namespace reiflab {

// Invalid argument or violated type invariant; the CLI maps this to exit 2.
struct validation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Request below the trusted resolution of a sample (e.g. a ball radius under
// 4x the declared floor). Callers may catch this and report "inconclusive".
struct resolution_error : std::domain_error {
  using std::domain_error::domain_error;
};

// A safety cap tripped (depth/memory/search guards). Overriding requires an
// explicit flag at the call site; the CLI maps this to exit 2.
struct guard_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Filesystem or serialization failure; the CLI maps this to exit 3.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace reiflab
