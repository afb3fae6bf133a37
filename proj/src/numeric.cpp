#include "iet/numeric.hpp"

#include "iet/errors.hpp"

#include <cctype>

namespace iet {

namespace {

BigInt parse_integer(std::string_view text, std::size_t offset) {
  if (text.empty()) throw ParseError("empty integer", offset);
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') ++i;
  if (i == text.size()) throw ParseError("sign without digits", offset);
  for (std::size_t k = i; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
      throw ParseError(std::string("unexpected character '") + text[k] + "'", offset + k);
    }
  }
  return BigInt(std::string(text[0] == '+' ? text.substr(1) : text));
}

std::string_view trim(std::string_view s, std::size_t& offset) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
    ++offset;
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::size_t offset = 0;
  text = trim(text, offset);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigInt num = parse_integer(text.substr(0, slash), offset);
    const BigInt den = parse_integer(text.substr(slash + 1), offset + slash + 1);
    if (den == 0) throw ParseError("zero denominator", offset + slash + 1);
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    const bool negative = !whole.empty() && whole[0] == '-';
    const BigInt w = (whole.empty() || whole == "-" || whole == "+")
                         ? BigInt(0)
                         : parse_integer(whole, offset);
    BigInt scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    const BigInt f = frac.empty() ? BigInt(0) : parse_integer(frac, offset + dot + 1);
    if (!frac.empty() && (frac[0] == '-' || frac[0] == '+')) {
      throw ParseError("sign inside fraction digits", offset + dot + 1);
    }
    Rational out(w * scale + (negative ? -f : f), scale);
    return out;
  }
  return Rational(parse_integer(text, offset));
}

std::string to_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

const char* to_string(ArithmeticMode mode) {
  switch (mode) {
    case ArithmeticMode::float64: return "float";
    case ArithmeticMode::exact_rational: return "rational";
    case ArithmeticMode::high_precision: return "high_precision";
  }
  return "unknown";
}

ArithmeticMode parse_arithmetic_mode(std::string_view text) {
  if (text == "float") return ArithmeticMode::float64;
  if (text == "rational") return ArithmeticMode::exact_rational;
  if (text == "high_precision") return ArithmeticMode::high_precision;
  throw ParseError("unknown arithmetic mode '" + std::string(text) + "'", 0);
}

}  // namespace iet
