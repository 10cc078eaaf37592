#pragma once

#include <stdexcept>
#include <string>

namespace polyflow {

// Bad arguments: unknown ids, out-of-range parameters, malformed structures.
struct InvalidInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A configured enumeration cap would be exceeded. Never truncated silently.
struct SizeCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure inside a solver (iteration limit, singular basis).
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace polyflow
