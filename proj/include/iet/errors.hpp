#pragma once

#include <stdexcept>
#include <string>

namespace iet {

/// A point outside the domain of the map it was passed to.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or out-of-range arguments (negative counts, bad windows, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The permutation splits into smaller exchanges; graph and Type W
/// analysis are only defined for irreducible permutations.
class ReducibleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation that cannot be carried out at the available precision or
/// size (for example a continued fraction quotient with billions of digits).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text input that could not be parsed. `position` is the 0-based offset of
/// the offending character or token.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace iet
