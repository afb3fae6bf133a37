#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace iet {

/// Location of a strict maximum together with an optional (epsilon, delta)
/// modulus table: f(x) >= f(max) - delta implies dist(x, max) <= epsilon.
struct NondegenerateMax {
  double location = 0.0;
  std::vector<std::pair<double, double>> modulus;
};

/// Declared regularity of a sampling function. The sampling module spot-checks
/// these claims on a grid when a function is constructed; the permutation
/// classifier only reads them.
struct FunctionMetadata {
  std::optional<double> lipschitz_constant;
  /// Upper bound on the cardinality of every level set f^{-1}({x}).
  std::optional<int> level_set_bound;
  std::optional<NondegenerateMax> nondeg_max;
  bool is_constant = false;
  bool continuous = true;
  /// f(1-) == f(0), i.e. f is continuous as a function on the circle.
  bool circle_continuous = false;
  bool continuously_differentiable = false;
};

}  // namespace iet
