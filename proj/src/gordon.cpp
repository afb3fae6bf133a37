#include "iet/gordon.hpp"

#include <mpfr.h>

#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

namespace iet {

ContinuedFraction::ContinuedFraction(BigInt a0, std::vector<BigInt> quotients) : a0_(std::move(a0)) {
  if (a0_ < 0) throw ArgumentError("continued fraction needs a_0 >= 0");
  p_ = {a0_};
  q_ = {BigInt(1)};
  for (auto& a : quotients) push_back(std::move(a));
}

void ContinuedFraction::push_back(BigInt a) {
  if (a < 1) throw ArgumentError("partial quotients a_k (k >= 1) must be >= 1");
  const std::size_t k = a_.size() + 1;
  const BigInt p_prev2 = k >= 2 ? p_[k - 2] : BigInt(1);
  const BigInt q_prev2 = k >= 2 ? q_[k - 2] : BigInt(0);
  p_.push_back(a * p_[k - 1] + p_prev2);
  q_.push_back(a * q_[k - 1] + q_prev2);
  a_.push_back(std::move(a));
}

BigInt ContinuedFraction::determinant(std::size_t k) const {
  if (k < 1 || k > size()) throw ArgumentError("determinant needs 1 <= k <= size()");
  return p_[k] * q_[k - 1] - p_[k - 1] * q_[k];
}

Rational ContinuedFraction::value() const { return Rational(p_.back(), q_.back()); }

HighPrecision ContinuedFraction::high_precision_value() const {
  return HighPrecision(p_.back()) / HighPrecision(q_.back());
}

std::string ContinuedFraction::to_string() const {
  std::string out = "[" + a0_.str();
  for (std::size_t k = 0; k < a_.size(); ++k) {
    out += k == 0 ? "; " : ", ";
    out += a_[k].str();
  }
  return out + "]";
}

ContinuedFraction ContinuedFraction::parse(std::string_view text) {
  std::size_t i = 0;
  const auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  const auto expect = [&](char c) {
    skip();
    if (i >= text.size() || text[i] != c) {
      throw ParseError(std::string("expected '") + c + "'", i);
    }
    ++i;
  };
  const auto integer = [&] {
    skip();
    const std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) throw ParseError("expected a non-negative integer", start);
    return std::pair{BigInt(std::string(text.substr(start, i - start))), start};
  };

  expect('[');
  BigInt a0 = integer().first;
  std::vector<BigInt> quotients;
  skip();
  if (i < text.size() && text[i] == ';') {
    ++i;
    skip();
    if (i < text.size() && text[i] != ']') {
      while (true) {
        auto [a, pos] = integer();
        if (a < 1) throw ParseError("partial quotient must be >= 1", pos);
        quotients.push_back(std::move(a));
        skip();
        if (i < text.size() && text[i] == ',') {
          ++i;
          continue;
        }
        break;
      }
    }
  }
  expect(']');
  skip();
  if (i != text.size()) throw ParseError("trailing characters", i);
  return ContinuedFraction(std::move(a0), std::move(quotients));
}

ContinuedFraction continued_fraction_of(const Rational& x) {
  if (x < 0) throw ArgumentError("continued_fraction_of needs x >= 0");
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  BigInt a0 = num / den;
  num -= a0 * den;
  std::vector<BigInt> quotients;
  while (num != 0) {
    // x = 1 / (den / num)
    BigInt a = den / num;
    BigInt rem = den - a * num;
    quotients.push_back(std::move(a));
    den = std::move(num);
    num = std::move(rem);
  }
  return ContinuedFraction(std::move(a0), std::move(quotients));
}

// ---------------------------------------------------------------------------

double gordon_sup_diff(const Potential& v, long q) {
  if (q < 1) throw ArgumentError("gordon_sup_diff needs q >= 1");
  if (!v.covers(-q, 2 * q)) {
    throw ArgumentError("potential window [" + std::to_string(v.n_from()) + ", " +
                        std::to_string(v.n_to()) + ") does not cover [-q, 2q) for q = " +
                        std::to_string(q));
  }
  double s = 0.0;
  for (long j = 0; j < q; ++j) {
    s = std::max({s, std::abs(v(j) - v(j + q)), std::abs(v(j) - v(j - q))});
  }
  return s;
}

CVerdict gordon_verdict(const std::vector<long>& qs, const std::vector<double>& sup_diffs, double C) {
  if (qs.size() != sup_diffs.size() || qs.empty()) {
    throw ArgumentError("gordon_verdict needs matching, non-empty qs and sup_diffs");
  }
  CVerdict out;
  out.C = C;
  for (std::size_t k = 0; k < qs.size(); ++k) {
    const double s = sup_diffs[k];
    if (s < 0) throw ArgumentError("sup differences must be >= 0");
    out.products.push_back(s == 0 ? 0.0 : std::exp(std::log(s) + C * static_cast<double>(qs[k])));
  }
  bool monotone = true;
  for (std::size_t k = 1; k < out.products.size(); ++k) {
    if (!(out.products[k] <= out.products[k - 1])) monotone = false;
  }
  const double first = out.products.front();
  const double last = out.products.back();
  out.verdict = monotone && (last == 0.0 || last < first);
  return out;
}

std::string decimal_string(const HighPrecision& x, int digits) {
  return x.str(digits, std::ios_base::fixed);
}

// ---------------------------------------------------------------------------

GrowthSpec GrowthSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("growth spec must look like exp:3 or power:2", 0);
  const auto kind = text.substr(0, colon);
  GrowthSpec g;
  if (kind == "exp") {
    g.kind = Kind::exponential;
  } else if (kind == "power") {
    g.kind = Kind::power;
  } else {
    throw ParseError("unknown growth kind '" + std::string(kind) + "'", 0);
  }
  const std::string rate(text.substr(colon + 1));
  std::size_t used = 0;
  try {
    g.rate = std::stod(rate, &used);
  } catch (const std::exception&) {
    throw ParseError("growth rate is not a number", colon + 1);
  }
  if (used != rate.size()) throw ParseError("trailing characters in growth rate", colon + 1 + used);
  if (!(g.rate > 0) || !std::isfinite(g.rate)) {
    throw ArgumentError("growth rate must be positive so that f is decreasing");
  }
  return g;
}

std::string GrowthSpec::to_string() const {
  std::ostringstream out;
  out.precision(17);
  out << (kind == Kind::exponential ? "exp:" : "power:") << rate;
  return out.str();
}

HighPrecision GrowthSpec::log_value(const BigInt& q) const {
  const HighPrecision hq(q);
  if (kind == Kind::exponential) return -HighPrecision(rate) * hq;
  return -HighPrecision(rate) * log(hq);
}

HighPrecisionIet LiouvilleRotation::iet() const {
  return HighPrecisionIet(Permutation(std::vector<int>{2, 1}), {HighPrecision(1) - alpha, alpha});
}

namespace {

// Smallest a >= 1 with a q + q_prev >= q / f(q), the target rounded upward so
// that the inequality is guaranteed.
BigInt greedy_quotient(const GrowthSpec& g, const BigInt& q, const BigInt& q_prev, long digits) {
  const auto bits = static_cast<mpfr_prec_t>(static_cast<double>(digits) * 3.33) + 128;
  mpfr_t x, y;
  mpfr_init2(x, bits);
  mpfr_init2(y, bits);
  mpfr_set_z(y, q.backend().data(), MPFR_RNDU);
  if (g.kind == GrowthSpec::Kind::exponential) {
    mpfr_mul_d(x, y, g.rate, MPFR_RNDU);
    mpfr_exp(x, x, MPFR_RNDU);
  } else {
    mpfr_t r;
    mpfr_init2(r, bits);
    mpfr_set_d(r, g.rate, MPFR_RNDU);
    mpfr_pow(x, y, r, MPFR_RNDU);
    mpfr_clear(r);
  }
  mpfr_mul(x, x, y, MPFR_RNDU);  // q / f(q)
  mpfr_sub_z(x, x, q_prev.backend().data(), MPFR_RNDU);
  mpfr_div_z(x, x, q.backend().data(), MPFR_RNDU);
  BigInt a;
  mpfr_get_z(a.backend().data(), x, MPFR_RNDU);
  mpfr_clear(x);
  mpfr_clear(y);
  return a;
}

}  // namespace

LiouvilleRotation build_liouville_rotation(const GrowthSpec& growth, int k_max) {
  if (k_max < 1 || k_max > kMaxLiouvilleQuotients) {
    throw ArgumentError("k_max must be between 1 and " + std::to_string(kMaxLiouvilleQuotients));
  }
  if (!(growth.rate > 0)) throw ArgumentError("growth rate must be positive");
  LiouvilleRotation out;
  out.growth = growth;
  const HighPrecision ln10 = log(HighPrecision(10));

  for (int k = 0; k < k_max; ++k) {
    const BigInt q = out.cf.q(static_cast<std::size_t>(k));
    const BigInt q_prev = k == 0 ? BigInt(0) : out.cf.q(static_cast<std::size_t>(k - 1));
    // log10(q / f(q)) bounds the size of a_{k+1} q_k.
    const HighPrecision log_target = log(HighPrecision(q)) - growth.log_value(q);
    const HighPrecision digits = log_target / ln10;
    if (digits > HighPrecision(kMaxQuotientDigits)) {
      std::ostringstream msg;
      msg.precision(3);
      msg << "partial quotient a_" << (k + 1) << " needs about " << digits.convert_to<double>()
          << " decimal digits (q_" << k << " = " << q.str() << "); the limit is "
          << kMaxQuotientDigits;
      throw NumericError(msg.str());
    }
    BigInt a = greedy_quotient(growth, q, q_prev, digits.convert_to<long>() + 1);
    if (a < 1) {
      a = 1;
      out.notes.push_back("a_" + std::to_string(k + 1) +
                          " = 1: the growth bound did not force a large quotient");
    }
    out.cf.push_back(std::move(a));
  }
  out.alpha = out.cf.high_precision_value();
  out.notes.push_back("alpha is the finite fraction p_K/q_K with K = " + std::to_string(k_max) +
                      "; its orbit is exactly q_K-periodic");

  const auto t = out.iet();
  const HighPrecision slack("1e-150");
  for (int k = 0; k < k_max; ++k) {
    LiouvilleBound b;
    b.k = k;
    b.q = out.cf.q(static_cast<std::size_t>(k));
    b.q_next = out.cf.q(static_cast<std::size_t>(k + 1));
    b.log_growth = growth.log_value(b.q);
    b.log_bound = -log(HighPrecision(b.q_next));
    b.holds = log(HighPrecision(b.q)) + b.log_bound <= b.log_growth + slack;
    if (b.q <= kMaxOrbitCheck) {
      b.orbit_displacement = orbit_displacement(t, HighPrecision(0), b.q.convert_to<long>());
    }
    out.bounds.push_back(std::move(b));
  }
  return out;
}

}  // namespace iet
