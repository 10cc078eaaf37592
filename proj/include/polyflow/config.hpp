#pragma once

#include <cstdint>

namespace polyflow {

// Tolerances, stated once and reused everywhere.
inline constexpr double kExactTol = 1e-9;   // closed-formula comparisons
inline constexpr double kLpTol = 1e-6;      // LP-derived values
inline constexpr double kLpResidual = 1e-7; // solver residual requirement

// Enumeration caps. Exceeding a cap is an explicit error, never silent
// truncation; all of these can be overridden per call.
struct Caps {
  int ground = 16;       // max ground set size
  int property = 8;      // exhaustive submodularity / monotonicity checks
  int membership = 16;   // exhaustive subset membership
  int permutation = 8;   // d! permutation enumeration
  int degree = 12;       // per-node subset constraint enumeration in the LP
  int assignment = 20;   // 2^|F| cut assignment enumeration
  int vertex = 18;       // 2^|V| cut enumeration
};

inline constexpr int kDefaultGroundCap = 16;

}  // namespace polyflow
