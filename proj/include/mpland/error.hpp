#pragma once

#include <stdexcept>
#include <string>

namespace mpland {

// Malformed or out-of-contract input (bad files, non-normalized weights,
// degenerate regions). Maps to exit code 2 at the CLI boundary.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A postcondition the library itself should have guaranteed did not hold.
// Maps to exit code 3.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mpland
