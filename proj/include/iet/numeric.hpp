#pragma once

// Scalar types shared across the library and the traits that let the
// IET code run unchanged over float64, exact rationals and 200-digit reals.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>

namespace iet {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline constexpr unsigned kHighPrecisionDigits = 200;
using HighPrecision = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<kHighPrecisionDigits>,
    boost::multiprecision::et_off>;

enum class ArithmeticMode { float64, exact_rational, high_precision };

template <class Real>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr ArithmeticMode mode = ArithmeticMode::float64;
  static constexpr bool exact = false;
  // Points closer than this are treated as coincident.
  static double tolerance() { return 1e-12; }
  static double to_double(double x) { return x; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr ArithmeticMode mode = ArithmeticMode::exact_rational;
  static constexpr bool exact = true;
  static Rational tolerance() { return Rational(0); }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
};

template <>
struct ScalarTraits<HighPrecision> {
  static constexpr ArithmeticMode mode = ArithmeticMode::high_precision;
  static constexpr bool exact = false;
  static HighPrecision tolerance() { return HighPrecision("1e-180"); }
  static double to_double(const HighPrecision& x) { return x.convert_to<double>(); }
};

template <class Real>
double to_double(const Real& x) {
  return ScalarTraits<Real>::to_double(x);
}

template <class Real>
bool nearly_equal(const Real& a, const Real& b) {
  if constexpr (ScalarTraits<Real>::exact) {
    return a == b;
  } else {
    using std::abs;
    return abs(a - b) <= ScalarTraits<Real>::tolerance();
  }
}

/// Parses "p/q", "p" or a decimal literal such as "0.25" into an exact rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

const char* to_string(ArithmeticMode mode);
ArithmeticMode parse_arithmetic_mode(std::string_view text);

}  // namespace iet
