#pragma once

// JSON input specs for exchanges and sampling functions, and JSON forms of
// the result records.

#include "iet/cocycle.hpp"
#include "iet/gordon.hpp"
#include "iet/iet.hpp"
#include "iet/sampling.hpp"
#include "iet/spectrum.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace iet {

using Json = nlohmann::ordered_json;

/// {"perm": "3 2 1" | [3, 2, 1], "lengths": ["1/5", 0.3, "0.5"], "mode": ...}
/// or {"preset": "golden_rotation" | "perturbed_reversal"}. Lengths are kept
/// as text so that each arithmetic mode reads them at its own precision.
struct IetSpec {
  Permutation perm = Permutation::identity(2);
  std::vector<std::string> lengths;
  ArithmeticMode mode = ArithmeticMode::float64;

  static IetSpec from_json(const Json& j);
  Json to_json() const;

  Iet to_float() const;
  RationalIet to_rational() const;
  HighPrecisionIet to_high_precision() const;
};

/// {"kind": "cosine", "params": {"lambda": 1}, "metadata": {...}}.
/// Kinds and params: constant {c}, cosine {lambda}, piecewise_linear {xs, ys},
/// step {xs, ys}, trig_polynomial {c0, cos, sin}.
SamplingFunction function_from_json(const Json& j);
FunctionMetadata metadata_from_json(const Json& j);
Json to_json(const FunctionMetadata& m);

Json to_json(const LyapunovEstimate& e);
Json to_json(const SpectrumApprox& s);
Json to_json(const ACReport& r);
Json to_json(const MainCondWitness& w);
Json to_json(const WitnessReport& r);
Json to_json(const KeaneVerdict& v);
Json to_json(const Alignment& a);
Json to_json(const ReturnTime& r);
Json to_json(const ContinuedFraction& cf);
/// {alpha_digits, qs, sup_diffs, C_verdicts, ...}.
Json to_json(const GordonCertificate& c);
Json to_json(const LiouvilleRotation& r);

/// Reads `text` as inline JSON when it starts with '{' or '[', otherwise as
/// the path of a JSON file.
Json json_inline_or_file(const std::string& text);

}  // namespace iet
