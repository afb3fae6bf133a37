#include <doctest.h>

#include "fixtures.hpp"
#include "iet/io.hpp"

using namespace iet;

TEST_CASE("IET specs in every mode") {
  const auto spec = IetSpec::from_json(Json::parse(R"({"perm": "3 2 1", "lengths": ["1/5", 0.3, "0.5"], "mode": "rational"})"));
  CHECK(spec.mode == ArithmeticMode::exact_rational);
  const auto q = spec.to_rational();
  CHECK(q.lengths()[0] == Rational(1, 5));
  CHECK(q.lengths()[1] == Rational(3, 10));
  const auto f = spec.to_float();
  CHECK(f.lengths()[2] == doctest::Approx(0.5));
  const auto h = spec.to_high_precision();
  CHECK(h.lengths()[0] == HighPrecision(1) / 5);

  const auto arr = IetSpec::from_json(Json::parse(R"({"perm": [2, 1], "lengths": [0.25, 0.75]})"));
  CHECK(arr.mode == ArithmeticMode::float64);
  CHECK(arr.perm == Permutation({2, 1}));
  CHECK(IetSpec::from_json(arr.to_json()).to_float().lengths() == arr.to_float().lengths());

  CHECK_THROWS_AS(IetSpec::from_json(Json::parse(R"({"perm": "2 1"})")), ArgumentError);
  CHECK_THROWS_AS(IetSpec::from_json(Json::parse(R"({"perm": "2 1", "lengths": ["x", "1"]})")).to_float(),
                  ParseError);
  CHECK_THROWS_AS(IetSpec::from_json(Json::parse(R"({"perm": "2 1", "lengths": ["1/3", "1/3"], "mode": "rational"})")).to_rational(),
                  ArgumentError);
  CHECK_THROWS_AS(IetSpec::from_json(Json::parse(R"({"preset": "nope"})")), ArgumentError);
}

TEST_CASE("presets match the fixtures") {
  const auto g = IetSpec::from_json(Json::parse(R"({"preset": "golden_rotation"})"));
  CHECK(g.to_float().lengths()[1] == doctest::Approx(fixtures::golden).epsilon(1e-15));
  const auto hp = g.to_high_precision();
  const HighPrecision golden = (sqrt(HighPrecision(5)) - 1) / 2;
  CHECK(abs(hp.lengths()[1] - golden) < HighPrecision("1e-195"));

  const auto r = IetSpec::from_json(Json::parse(R"({"preset": "perturbed_reversal"})")).to_float();
  const auto want = fixtures::perturbed_reversal();
  for (int j = 0; j < 3; ++j) {
    CHECK(r.lengths()[static_cast<std::size_t>(j)] == doctest::Approx(want.lengths()[static_cast<std::size_t>(j)]).epsilon(1e-15));
  }
}

TEST_CASE("function specs") {
  const auto c = function_from_json(Json::parse(R"({"kind": "cosine", "params": {"lambda": 2}})"));
  CHECK(c(0.0) == doctest::Approx(2.0));
  CHECK(c.metadata().lipschitz_constant.has_value());
  const auto k = function_from_json(Json::parse(R"({"kind": "constant", "params": {"c": 1.5}})"));
  CHECK(k(0.3) == 1.5);
  const auto pl = function_from_json(Json::parse(R"({"kind": "piecewise_linear", "params": {"xs": [0, 0.5, 1], "ys": [0, 1, 0]}})"));
  CHECK(pl(0.25) == doctest::Approx(0.5));
  const auto st = function_from_json(Json::parse(R"({"kind": "step", "params": {"xs": [0, 0.5], "ys": [1, 2]}})"));
  CHECK(st(0.75) == 2.0);
  const auto tp = function_from_json(Json::parse(R"({"kind": "trig_polynomial", "params": {"c0": 1, "cos": [0.5], "sin": [0.25]}})"));
  CHECK(tp(0.0) == doctest::Approx(1.5));

  const auto meta = function_from_json(Json::parse(
      R"({"kind": "cosine", "params": {"lambda": 1}, "metadata": {"lipschitz_constant": 7, "level_set_bound": 2, "circle_continuous": true}})"));
  CHECK(*meta.metadata().lipschitz_constant == 7.0);
  CHECK(metadata_from_json(to_json(meta.metadata())).level_set_bound == 2);

  CHECK_THROWS_AS(function_from_json(Json::parse(R"({"kind": "gauss"})")), ArgumentError);
  CHECK_THROWS_AS(function_from_json(Json::parse(R"({"kind": "cosine", "params": {}})")), ArgumentError);
  // A false Lipschitz claim is rejected by the spot check.
  CHECK_THROWS_AS(function_from_json(Json::parse(
                      R"({"kind": "cosine", "params": {"lambda": 1}, "metadata": {"lipschitz_constant": 0.1}})")),
                  ArgumentError);
}

TEST_CASE("result records serialize") {
  GordonCertificate cert;
  cert.qs = {3, 5};
  cert.sup_diffs = {0.5, 0.0};
  cert.verdicts.push_back(gordon_verdict(cert.qs, cert.sup_diffs, 1.0));
  const auto j = to_json(cert);
  for (const char* key : {"alpha_digits", "qs", "sup_diffs", "C_verdicts"}) CHECK(j.contains(key));
  CHECK(j["C_verdicts"][0]["verdict"] == true);

  const auto cf = to_json(ContinuedFraction::parse("[0; 1, 2]"));
  CHECK(cf["text"] == "[0; 1, 2]");
  CHECK(cf["q"] == Json::array({"1", "1", "3"}));

  KeaneVerdict v;
  v.horizon = 10;
  CHECK(to_json(v)["min_separation"].is_null());
  CHECK(to_json(v)["status"] == "no-violation-up-to-horizon");
}

TEST_CASE("inline JSON or file") {
  CHECK(json_inline_or_file(R"({"a": 1})")["a"] == 1);
  CHECK_THROWS_AS(json_inline_or_file("{oops"), ParseError);
  CHECK_THROWS_AS(json_inline_or_file("/no/such/file.json"), ArgumentError);
}
