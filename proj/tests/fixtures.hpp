#pragma once

#include "iet/iet.hpp"

#include <cmath>

namespace fixtures {

inline const double golden = (std::sqrt(5.0) - 1.0) / 2.0;

/// Rotation by the golden mean: the swap with lengths (1 - g, g).
inline iet::Iet golden_rotation() { return iet::Iet(iet::Permutation({2, 1}), {1.0 - golden, golden}); }

/// Reversal on three intervals with lengths near (0.2, 0.3, 0.5), nudged by
/// irrational amounts so no endpoint orbit collides.
inline iet::Iet perturbed_reversal() {
  const double a = 0.2 + 1e-3 * std::sqrt(2.0);
  const double b = 0.3 + 1e-3 * std::sqrt(3.0);
  return iet::Iet(iet::Permutation::reversal(3), {a, b, 1.0 - a - b});
}

}  // namespace fixtures
