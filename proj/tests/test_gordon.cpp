#include <doctest.h>

#include "fixtures.hpp"
#include "iet/gordon.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace iet;

namespace {

// ||q x|| by direct rounding in long double.
long double dist_to_integer(long double x) {
  const long double f = x - std::floor(x);
  return std::min(f, 1.0L - f);
}

Iet rotation(double alpha) { return Iet(Permutation({2, 1}), {1.0 - alpha, alpha}); }

}  // namespace

TEST_CASE("continued fraction text round trip") {
  const auto cf = ContinuedFraction::parse(" [0; 2, 3 ,4] ");
  CHECK(cf.to_string() == "[0; 2, 3, 4]");
  CHECK(cf.size() == 3);
  CHECK(cf.value() == Rational(13, 30));
  CHECK(ContinuedFraction::parse("[3]").to_string() == "[3]");
  CHECK(ContinuedFraction::parse("[3;]").size() == 0);
  const auto big = ContinuedFraction::parse("[0; 123456789012345678901234567890]");
  CHECK(big.q(1) == BigInt("123456789012345678901234567890"));

  for (const char* bad : {"0; 1]", "[0; 1", "[0; 1,]", "[0; 0]", "[0; 1] x", "[-1; 2]"}) {
    CHECK_THROWS_AS(ContinuedFraction::parse(bad), ParseError);
  }
  try {
    ContinuedFraction::parse("[0; 2, x]");
  } catch (const ParseError& e) {
    CHECK(e.position() == 7);
  }
  CHECK_THROWS_AS(ContinuedFraction(BigInt(0), {BigInt(2), BigInt(0)}), ArgumentError);
}

TEST_CASE("convergents: identities and approximation bound") {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<int> quotient(1, 1000);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<BigInt> a(static_cast<std::size_t>(1 + trial % 25));
    for (auto& x : a) x = BigInt(quotient(rng)) * (trial % 3 == 0 ? BigInt("1000000000000") : BigInt(1));
    const ContinuedFraction cf(BigInt(0), a);
    const Rational x = cf.value();
    for (std::size_t k = 1; k <= cf.size(); ++k) {
      CHECK(cf.q(k) == cf.quotients()[k - 1] * cf.q(k - 1) + (k >= 2 ? cf.q(k - 2) : BigInt(0)));
      CHECK(cf.determinant(k) == (k % 2 == 1 ? 1 : -1));
      if (k < cf.size()) {
        // Strict for an infinite expansion; the finite one hits equality at K - 1.
        const Rational err = abs(x - Rational(cf.p(k), cf.q(k)));
        const Rational bound(BigInt(1), cf.q(k) * cf.q(k + 1));
        if (k + 1 < cf.size()) CHECK(err < bound);
        else CHECK(err == bound);
      }
    }
    if (a.back() > 1) CHECK(continued_fraction_of(x).quotients() == a);
  }
}

TEST_CASE("golden continued fraction has Fibonacci denominators") {
  const ContinuedFraction cf(BigInt(0), std::vector<BigInt>(30, BigInt(1)));
  BigInt f0 = 1, f1 = 1;
  for (std::size_t k = 0; k <= 30; ++k) {
    CHECK(cf.q(k) == f0);
    const BigInt next = f0 + f1;
    f0 = f1;
    f1 = next;
  }
  CHECK(std::abs(cf.high_precision_value().convert_to<double>() - fixtures::golden) < 1e-12);
}

TEST_CASE("gordon_sup_diff") {
  std::vector<double> periodic;
  for (long n = -5; n < 10; ++n) periodic.push_back(std::sin(static_cast<double>((n % 5 + 5) % 5)));
  CHECK(gordon_sup_diff(Potential(-5, periodic), 5) == 0.0);

  std::vector<double> ramp;
  for (long n = -3; n < 6; ++n) ramp.push_back(static_cast<double>(n * n));
  // j in {0, 1, 2}: |j^2 - (j+3)^2| = 6j + 9, largest 21.
  CHECK(gordon_sup_diff(Potential(-3, ramp), 3) == 21.0);
  CHECK_THROWS_AS(gordon_sup_diff(Potential(-3, ramp), 4), ArgumentError);
  CHECK_THROWS_AS(gordon_sup_diff(Potential(-2, std::vector<double>(8, 0.0)), 3), ArgumentError);
}

TEST_CASE("rational rotations return exactly") {
  const RationalIet t(Permutation({2, 1}), {Rational(4, 7), Rational(3, 7)});
  CHECK(orbit_displacement(t, Rational(1, 5), 7) == 0);
  CHECK(orbit_displacement(t, Rational(1, 5), 3) > 0);
  const auto top = find_return_times(t, Rational(0), 30, 4);
  REQUIRE(top.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(top[i].q == 7 * static_cast<long>(i + 1));
    CHECK(top[i].displacement == 0.0);
  }
}

TEST_CASE("golden return times are Fibonacci numbers") {
  const auto rot = fixtures::golden_rotation();
  const auto top = find_return_times(rot, 0.0, 100, 6);
  // For a rotation every j gives the same displacement ||q g||.
  std::vector<std::pair<long double, long>> oracle;
  const long double g = (std::sqrt(5.0L) - 1) / 2;
  for (long q = 1; q <= 100; ++q) oracle.push_back({dist_to_integer(q * g), q});
  std::sort(oracle.begin(), oracle.end());
  REQUIRE(top.size() == 6);
  for (std::size_t i = 0; i < top.size(); ++i) {
    CHECK(top[i].q == oracle[i].second);
    CHECK(std::abs(top[i].displacement - static_cast<double>(oracle[i].first)) < 1e-12);
  }
  // The four best are convergent denominators; 68 = 55 + 13 and 76 = 89 - 13
  // come before 13 itself.
  CHECK(top[0].q == 89);
  CHECK(top[1].q == 55);
  CHECK(top[2].q == 34);
  CHECK(top[3].q == 21);
  CHECK_THROWS_AS(find_return_times(rot, 0.0, 1, 3), ArgumentError);
}

TEST_CASE("golden rotation is not Gordon") {
  const auto rot = fixtures::golden_rotation();
  const auto f = SamplingFunction::cosine(1.0);
  const std::vector<long> qs{13, 21, 34, 55, 89, 144, 233};
  const auto cert = gordon_certificate(rot, f, 0.3, qs, {1.0, 0.01});
  REQUIRE(cert.sup_diffs.size() == qs.size());
  REQUIRE(cert.chain_bounds.size() == qs.size());
  CHECK(cert.chain_ok);
  const long double g = (std::sqrt(5.0L) - 1) / 2;
  for (std::size_t k = 0; k < qs.size(); ++k) {
    const double d = static_cast<double>(dist_to_integer(qs[k] * g));
    CHECK(std::abs(cert.displacements[k] - d) < 1e-10);
    CHECK(cert.sup_diffs[k] <= 2 * std::numbers::pi * d + 1e-12);
    CHECK(cert.sup_diffs[k] > 0.0);
  }
  CHECK_FALSE(cert.verdicts[0].verdict);
  REQUIRE(cert.alpha_digits.has_value());

  // The Potential route agrees with the certificate.
  const auto v = potential(rot, f, 0.3, -89, 178);
  CHECK(gordon_sup_diff(v, 89) == doctest::Approx(cert.sup_diffs[4]).epsilon(1e-12));
}

TEST_CASE("constant potentials pass every C") {
  const auto rev = fixtures::perturbed_reversal();
  const auto cert = gordon_certificate(rev, SamplingFunction::constant(0.7), 0.2, {3, 10, 40}, {1.0, 5.0});
  for (double s : cert.sup_diffs) CHECK(s == 0.0);
  for (const auto& v : cert.verdicts) CHECK(v.verdict);
  CHECK_FALSE(cert.alpha_digits.has_value());
  CHECK_THROWS_AS(gordon_certificate(rev, SamplingFunction::constant(0.7), 0.2, {3, 3}, {1.0}),
                  ArgumentError);
}

TEST_CASE("gordon_verdict is recomputable from the record") {
  CHECK(gordon_verdict({1, 2, 3}, {1.0, 0.1, 0.001}, 1.0).verdict);
  CHECK_FALSE(gordon_verdict({1, 2, 3}, {1.0, 0.5, 0.4}, 1.0).verdict);
  CHECK(gordon_verdict({5}, {0.0}, 3.0).verdict);
  CHECK_FALSE(gordon_verdict({5}, {1e-9}, 3.0).verdict);
  const auto big = gordon_verdict({1000, 2000}, {1e-5, 1e-6}, 1.0);
  CHECK(std::isinf(big.products[0]));
  CHECK_FALSE(big.verdict);
}

TEST_CASE("growth specs") {
  CHECK(GrowthSpec::parse("exp:3").kind == GrowthSpec::Kind::exponential);
  CHECK(GrowthSpec::parse("power:2").rate == 2.0);
  CHECK(GrowthSpec::parse("exp:3").to_string() == "exp:3");
  CHECK_THROWS_AS(GrowthSpec::parse("exp3"), ParseError);
  CHECK_THROWS_AS(GrowthSpec::parse("gauss:1"), ParseError);
  CHECK_THROWS_AS(GrowthSpec::parse("exp:-1"), ArgumentError);
  CHECK(GrowthSpec::parse("exp:3").log_value(BigInt(2)) == HighPrecision(-6));
}

TEST_CASE("Liouville rotations: greedy quotients are minimal") {
  for (const char* spec : {"exp:3", "exp:0.5", "power:2", "power:1"}) {
    const auto g = GrowthSpec::parse(spec);
    const int k_max = g.kind == GrowthSpec::Kind::exponential ? 2 : 8;
    const auto r = build_liouville_rotation(g, k_max);
    REQUIRE(r.cf.size() == static_cast<std::size_t>(k_max));
    REQUIRE(r.bounds.size() == static_cast<std::size_t>(k_max));
    for (int k = 0; k < k_max; ++k) {
      const auto& q = r.cf.q(static_cast<std::size_t>(k));
      const auto& q1 = r.cf.q(static_cast<std::size_t>(k + 1));
      // q / f(q) computed independently.
      const HighPrecision target = HighPrecision(q) * exp(-g.log_value(q));
      CHECK(HighPrecision(q1) >= target * (1 - HighPrecision("1e-190")));
      if (r.cf.quotients()[static_cast<std::size_t>(k)] > 1) {
        CHECK(HighPrecision(q1 - q) < target);
      }
      const auto& b = r.bounds[static_cast<std::size_t>(k)];
      CHECK(b.holds);
      if (b.orbit_displacement) {
        CHECK(*b.orbit_displacement <= (HighPrecision(1) / HighPrecision(q1)) * (1 + HighPrecision("1e-150")));
        CHECK(log(*b.orbit_displacement) <= b.log_growth);
      }
    }
  }
}

TEST_CASE("Liouville rotation for exp(-3q)") {
  const auto r = build_liouville_rotation(GrowthSpec::parse("exp:3"), 2);
  CHECK(r.cf.quotients()[0] == 21);  // e^3 = 20.09
  REQUIRE(r.bounds[1].orbit_displacement.has_value());
  const double d21 = r.bounds[1].orbit_displacement->convert_to<double>();
  CHECK(d21 > 0.0);
  CHECK(d21 < std::exp(-63.0));

  // k = 1 certificate by direct 200-digit orbit computation.
  const auto t = r.iet();
  const auto cert = gordon_certificate(t, SamplingFunction::cosine(1.0), HighPrecision(0), {21}, {2.0});
  CHECK(cert.chain_ok);
  CHECK(cert.sup_diffs[0] <= 2 * std::numbers::pi * d21 * (1 + 1e-9));
  CHECK(cert.sup_diffs[0] * std::exp(42.0) <= 1e-6);
  REQUIRE(cert.alpha_digits.has_value());
  CHECK(cert.alpha_digits->size() > 200);

  CHECK_THROWS_AS(build_liouville_rotation(GrowthSpec::parse("exp:3"), 3), NumericError);
  CHECK_THROWS_AS(build_liouville_rotation(GrowthSpec::parse("exp:3"), 0), ArgumentError);
  CHECK_THROWS_AS(build_liouville_rotation(GrowthSpec::parse("exp:3"), 9), ArgumentError);
}

TEST_CASE("one quotient gives alpha = 1 / a_1") {
  const auto r = build_liouville_rotation(GrowthSpec::parse("exp:1"), 1);
  CHECK(r.cf.quotients()[0] == 3);  // e = 2.718
  CHECK(r.cf.value() == Rational(1, 3));
  CHECK(r.bounds.size() == 1);
  CHECK(r.bounds[0].holds);
}

TEST_CASE("rotation helper matches the fixture") {
  CHECK(rotation(fixtures::golden).apply(0.1) == fixtures::golden_rotation().apply(0.1));
}
