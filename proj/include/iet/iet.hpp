#pragma once

// Interval exchange transformations over a generic scalar: float64 for
// numerics, exact rationals for proofs of Keane violations, and 200-digit
// reals for Liouville orbits.

#include "iet/errors.hpp"
#include "iet/numeric.hpp"
#include "iet/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iterator>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace iet {

template <class Real>
class BasicIet {
 public:
  using value_type = Real;

  /// Lengths must be positive and sum to 1 (exactly for rationals, within the
  /// scalar tolerance otherwise, after which they are renormalized).
  BasicIet(Permutation perm, std::vector<Real> lengths);

  const Permutation& perm() const noexcept { return perm_; }
  int r() const noexcept { return perm_.size(); }
  const std::vector<Real>& lengths() const noexcept { return lengths_; }
  /// Left endpoint of I_j, 1 <= j <= r; left_endpoint(r + 1) == 1.
  const Real& left_endpoint(int j) const { return left_[static_cast<std::size_t>(j - 1)]; }
  /// Left endpoint of T(I_j).
  const Real& image_offset(int j) const { return offset_[static_cast<std::size_t>(j - 1)]; }
  /// Interior breakpoints w_1 < ... < w_{r-1}.
  std::vector<Real> breakpoints() const;
  /// Interior breakpoints of T^{-1}: the left endpoints of T(I_j) other than 0.
  std::vector<Real> inverse_breakpoints() const;
  static constexpr ArithmeticMode mode() noexcept { return ScalarTraits<Real>::mode; }

  /// T(w) for w in [0, 1).
  Real apply(const Real& w) const;
  /// T^{-1}(w) for w in [0, 1).
  Real apply_inverse(const Real& w) const;
  /// T^n(w) for any integer n.
  Real power(const Real& w, long n) const;
  /// T_-(y) = lim_{x -> y-} T(x) for y in (0, 1].
  Real left_limit(const Real& y) const;
  /// lim_{x -> w-} T^n(x) for w in (0, 1], n >= 1.
  Real left_limit_power(const Real& w, long n) const;

  /// (T^n w) for n_from <= n <= n_to.
  std::vector<Real> orbit(const Real& w, long n_from, long n_to) const;

  /// Sorted union over 0 <= m < n of T^{-m}(breakpoints): every point at which
  /// T^n can be discontinuous.
  std::vector<Real> discontinuities_of_power(long n) const;
  /// Same for T^{-n}: union over 0 <= m < n of T^m(inverse breakpoints).
  std::vector<Real> discontinuities_of_inverse_power(long n) const;

 private:
  void check_domain(const Real& w, const char* op) const;
  // 0-based index of the interval containing w (right-continuous convention).
  std::size_t interval_of(const Real& w) const;
  Real clamp_unit(Real x) const;
  static Real snap_up(const Real& x) {
    if constexpr (ScalarTraits<Real>::exact) return x;
    else return x + ScalarTraits<Real>::tolerance();
  }
  static Real snap_down(const Real& x) {
    if constexpr (ScalarTraits<Real>::exact) return x;
    else return x - ScalarTraits<Real>::tolerance();
  }

  Permutation perm_;
  std::vector<Real> lengths_;
  std::vector<Real> left_;         // size r + 1, left_[r] == 1
  std::vector<Real> offset_;       // size r, image left endpoints by interval
  std::vector<Real> image_left_;   // size r + 1, image left endpoints by slot
  std::vector<int> slot_owner_;    // slot (0-based) -> interval (0-based)
};

using Iet = BasicIet<double>;
using RationalIet = BasicIet<Rational>;
using HighPrecisionIet = BasicIet<HighPrecision>;

// ---------------------------------------------------------------------------
// Keane falsification

enum class KeaneStatus { violated, suspected, no_violation_up_to_horizon };

const char* to_string(KeaneStatus status);

struct KeaneWitness {
  /// Left endpoint whose orbit collides: 0 is the point 0, j >= 1 is w_j.
  int endpoint = 0;
  long step = 0;
  /// Breakpoint w_j that was hit.
  int hit_breakpoint = 0;
  double value = 0.0;
  /// Exact value as text ("p/q") in rational mode, decimal otherwise.
  std::string exact_value;
};

struct KeaneVerdict {
  KeaneStatus status = KeaneStatus::no_violation_up_to_horizon;
  std::optional<KeaneWitness> witness;
  long horizon = 0;
  /// Smallest distance from a forward endpoint orbit point to a breakpoint.
  double min_separation = std::numeric_limits<double>::infinity();
};

/// Iterates the orbits of all r left endpoints for `horizon` steps and looks
/// for a point landing on an interior breakpoint. Only rational mode can prove
/// a violation; other modes report a collision closer than the tolerance as
/// suspected.
template <class Real>
KeaneVerdict keane_falsify(const BasicIet<Real>& t, long horizon);

/// Re-evaluates the witness orbit directly.
template <class Real>
bool verify_keane_witness(const BasicIet<Real>& t, const KeaneWitness& w);

/// True iff the points {T^k w : 1 <= k <= n} together with 0 and 1 leave no
/// gap of length >= eps.
template <class Real>
bool minimality_probe(const BasicIet<Real>& t, const Real& w, long n, double eps);

struct Alignment {
  long l = 0;
  /// Largest |T^m w - T^{m+l} w2| over -n <= m <= n.
  double max_displacement = 0.0;
  /// Interval around w on which all T^j, |j| <= n, are translations.
  double isometry_left = 0.0;
  double isometry_right = 1.0;
};

/// Finds l in [0, search_limit] with |T^m w - T^{m+l} w2| < eps for all
/// |m| <= n, by waiting for the orbit of w2 to enter the isometry interval of
/// w. Every returned l has been checked directly. Empty means the search limit
/// was too small, not that no l exists.
template <class Real>
std::optional<Alignment> find_alignment(const BasicIet<Real>& t, const Real& w, const Real& w2,
                                        long n, double eps, long search_limit);

// ===========================================================================
// Implementation

template <class Real>
BasicIet<Real>::BasicIet(Permutation perm, std::vector<Real> lengths)
    : perm_(std::move(perm)), lengths_(std::move(lengths)) {
  const int r = perm_.size();
  if (static_cast<int>(lengths_.size()) != r) {
    throw ArgumentError("IET needs " + std::to_string(r) + " lengths, got " +
                        std::to_string(lengths_.size()));
  }
  Real sum = 0;
  for (const auto& l : lengths_) {
    if (!(l > 0)) throw ArgumentError("IET lengths must be positive");
    sum += l;
  }
  if constexpr (ScalarTraits<Real>::exact) {
    if (sum != 1) throw ArgumentError("IET lengths must sum to exactly 1 in rational mode");
  } else {
    using std::abs;
    const Real slack = std::is_same_v<Real, double> ? Real(1e-12) : ScalarTraits<Real>::tolerance();
    if (abs(sum - 1) > slack) throw ArgumentError("IET lengths must sum to 1");
    for (auto& l : lengths_) l /= sum;
  }

  left_.assign(static_cast<std::size_t>(r + 1), Real(0));
  for (int j = 1; j < r; ++j) {
    left_[static_cast<std::size_t>(j)] = left_[static_cast<std::size_t>(j - 1)] + lengths_[static_cast<std::size_t>(j - 1)];
  }
  left_[static_cast<std::size_t>(r)] = 1;

  image_left_.assign(static_cast<std::size_t>(r + 1), Real(0));
  slot_owner_.assign(static_cast<std::size_t>(r), 0);
  for (int s = 1; s <= r; ++s) {
    const int j = perm_.inverse(s);
    slot_owner_[static_cast<std::size_t>(s - 1)] = j - 1;
    if (s > 1) {
      const int prev = perm_.inverse(s - 1);
      image_left_[static_cast<std::size_t>(s - 1)] =
          image_left_[static_cast<std::size_t>(s - 2)] + lengths_[static_cast<std::size_t>(prev - 1)];
    }
  }
  image_left_[static_cast<std::size_t>(r)] = 1;

  offset_.assign(static_cast<std::size_t>(r), Real(0));
  for (int j = 1; j <= r; ++j) {
    offset_[static_cast<std::size_t>(j - 1)] = image_left_[static_cast<std::size_t>(perm_(j) - 1)];
  }
}

template <class Real>
std::vector<Real> BasicIet<Real>::breakpoints() const {
  return std::vector<Real>(left_.begin() + 1, left_.end() - 1);
}

template <class Real>
std::vector<Real> BasicIet<Real>::inverse_breakpoints() const {
  return std::vector<Real>(image_left_.begin() + 1, image_left_.end() - 1);
}

template <class Real>
void BasicIet<Real>::check_domain(const Real& w, const char* op) const {
  if (!(w >= 0) || !(w < 1)) {
    throw DomainError(std::string(op) + ": point " + std::to_string(to_double(w)) +
                      " outside [0, 1)");
  }
}

template <class Real>
std::size_t BasicIet<Real>::interval_of(const Real& w) const {
  // Number of interior breakpoints <= w, with a point just below a
  // breakpoint (within tolerance) identified with it in inexact modes.
  auto it = std::upper_bound(left_.begin() + 1, left_.end() - 1, snap_up(w));
  return static_cast<std::size_t>(it - (left_.begin() + 1));
}

template <class Real>
Real BasicIet<Real>::clamp_unit(Real x) const {
  if constexpr (!ScalarTraits<Real>::exact) {
    // Rounding in the translation can leave [0, 1) by an ulp.
    if (x < 0) return Real(0);
    if (x >= 1) {
      if constexpr (std::is_same_v<Real, double>) {
        return std::nextafter(1.0, 0.0);
      } else {
        return Real(1) - ScalarTraits<Real>::tolerance();
      }
    }
  }
  return x;
}

template <class Real>
Real BasicIet<Real>::apply(const Real& w) const {
  check_domain(w, "apply");
  const std::size_t j = interval_of(w);
  return clamp_unit(w - left_[j] + offset_[j]);
}

template <class Real>
Real BasicIet<Real>::apply_inverse(const Real& w) const {
  check_domain(w, "apply_inverse");
  auto it = std::upper_bound(image_left_.begin() + 1, image_left_.end() - 1, snap_up(w));
  const auto slot = static_cast<std::size_t>(it - (image_left_.begin() + 1));
  const auto j = static_cast<std::size_t>(slot_owner_[slot]);
  return clamp_unit(w - offset_[j] + left_[j]);
}

template <class Real>
Real BasicIet<Real>::power(const Real& w, long n) const {
  Real x = w;
  check_domain(x, "power");
  for (long k = 0; k < n; ++k) x = apply(x);
  for (long k = 0; k > n; --k) x = apply_inverse(x);
  return x;
}

template <class Real>
Real BasicIet<Real>::left_limit(const Real& y) const {
  if (!(y > 0) || !(y <= 1)) {
    throw DomainError("left_limit: point " + std::to_string(to_double(y)) + " outside (0, 1]");
  }
  // Interval whose closure contains y from the left: left_j < y <= left_{j+1},
  // with a point just above a breakpoint counted as the breakpoint.
  auto it = std::lower_bound(left_.begin() + 1, left_.end() - 1, snap_down(y));
  const auto j = static_cast<std::size_t>(it - (left_.begin() + 1));
  Real out = y - left_[j] + offset_[j];
  if constexpr (!ScalarTraits<Real>::exact) {
    if (out > 1) out = 1;
    if (out <= 0) out = std::numeric_limits<double>::min();
  }
  return out;
}

template <class Real>
Real BasicIet<Real>::left_limit_power(const Real& w, long n) const {
  if (n < 1) throw ArgumentError("left_limit_power needs n >= 1");
  Real x = w;
  for (long k = 0; k < n; ++k) x = left_limit(x);
  return x;
}

template <class Real>
std::vector<Real> BasicIet<Real>::orbit(const Real& w, long n_from, long n_to) const {
  if (n_from > n_to) throw ArgumentError("orbit needs n_from <= n_to");
  std::vector<Real> out;
  out.reserve(static_cast<std::size_t>(n_to - n_from + 1));
  Real x = power(w, n_from);
  out.push_back(x);
  for (long n = n_from; n < n_to; ++n) {
    x = apply(x);
    out.push_back(x);
  }
  return out;
}

namespace detail {

template <class Real>
std::vector<Real> sorted_unique(std::vector<Real> points) {
  std::sort(points.begin(), points.end());
  std::vector<Real> out;
  out.reserve(points.size());
  for (auto& p : points) {
    if (out.empty() || !nearly_equal(out.back(), p)) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace detail

template <class Real>
std::vector<Real> BasicIet<Real>::discontinuities_of_power(long n) const {
  if (n < 1) throw ArgumentError("discontinuities_of_power needs n >= 1");
  std::vector<Real> out;
  for (const auto& b : breakpoints()) {
    Real x = b;
    for (long m = 0; m < n; ++m) {
      if (m > 0) x = apply_inverse(x);
      if (!nearly_equal(x, Real(0))) out.push_back(x);
    }
  }
  return detail::sorted_unique(std::move(out));
}

template <class Real>
std::vector<Real> BasicIet<Real>::discontinuities_of_inverse_power(long n) const {
  if (n < 1) throw ArgumentError("discontinuities_of_inverse_power needs n >= 1");
  std::vector<Real> out;
  for (const auto& b : inverse_breakpoints()) {
    Real x = b;
    for (long m = 0; m < n; ++m) {
      if (m > 0) x = apply(x);
      if (!nearly_equal(x, Real(0))) out.push_back(x);
    }
  }
  return detail::sorted_unique(std::move(out));
}

// ---------------------------------------------------------------------------

namespace detail {

template <class Real>
std::string exact_text(const Real& x) {
  if constexpr (std::is_same_v<Real, Rational>) {
    return to_string(x);
  } else if constexpr (std::is_same_v<Real, double>) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  } else {
    return x.str(40);
  }
}

}  // namespace detail

template <class Real>
KeaneVerdict keane_falsify(const BasicIet<Real>& t, long horizon) {
  if (horizon < 1) throw ArgumentError("keane_falsify needs horizon >= 1");
  const int r = t.r();
  const auto breaks = t.breakpoints();
  KeaneVerdict verdict;
  verdict.horizon = horizon;

  std::vector<Real> points;
  points.reserve(static_cast<std::size_t>(r));
  points.push_back(Real(0));
  for (const auto& b : breaks) points.push_back(b);

  for (long step = 1; step <= horizon; ++step) {
    for (int i = 0; i < r; ++i) {
      auto& x = points[static_cast<std::size_t>(i)];
      x = t.apply(x);
      auto it = std::lower_bound(breaks.begin(), breaks.end(), x);
      // Nearest breakpoint is *it or its predecessor.
      std::optional<std::size_t> nearest;
      double best = std::numeric_limits<double>::infinity();
      for (auto cand : {it, it == breaks.begin() ? breaks.end() : std::prev(it)}) {
        if (cand == breaks.end()) continue;
        using std::abs;
        const double d = to_double(Real(abs(*cand - x)));
        if (d < best) {
          best = d;
          nearest = static_cast<std::size_t>(cand - breaks.begin());
        }
      }
      if (!nearest) continue;
      verdict.min_separation = std::min(verdict.min_separation, best);
      if (nearly_equal(x, breaks[*nearest])) {
        KeaneWitness w;
        w.endpoint = i;
        w.step = step;
        w.hit_breakpoint = static_cast<int>(*nearest) + 1;
        w.value = to_double(x);
        w.exact_value = detail::exact_text(x);
        verdict.status = ScalarTraits<Real>::exact ? KeaneStatus::violated : KeaneStatus::suspected;
        if (!verify_keane_witness(t, w)) {
          throw std::logic_error("Keane witness failed re-verification");
        }
        verdict.witness = w;
        return verdict;
      }
    }
  }
  return verdict;
}

template <class Real>
bool verify_keane_witness(const BasicIet<Real>& t, const KeaneWitness& w) {
  if (w.endpoint < 0 || w.endpoint >= t.r() || w.hit_breakpoint < 1 || w.hit_breakpoint >= t.r()) {
    return false;
  }
  const Real start = w.endpoint == 0 ? Real(0) : t.left_endpoint(w.endpoint + 1);
  return nearly_equal(t.power(start, w.step), t.left_endpoint(w.hit_breakpoint + 1));
}

template <class Real>
bool minimality_probe(const BasicIet<Real>& t, const Real& w, long n, double eps) {
  if (n < 1) throw ArgumentError("minimality_probe needs n >= 1");
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(n + 2));
  pts.push_back(0.0);
  pts.push_back(1.0);
  Real x = w;
  for (long k = 1; k <= n; ++k) {
    x = t.apply(x);
    pts.push_back(to_double(x));
  }
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i] - pts[i - 1] >= eps) return false;
  }
  return true;
}

template <class Real>
std::optional<Alignment> find_alignment(const BasicIet<Real>& t, const Real& w, const Real& w2,
                                        long n, double eps, long search_limit) {
  if (n < 0 || search_limit < 0 || !(eps > 0)) {
    throw ArgumentError("find_alignment needs n >= 0, search_limit >= 0, eps > 0");
  }
  Real a = 0;
  Real b = 1;
  if (n >= 1) {
    auto forward = t.discontinuities_of_power(n);
    auto backward = t.discontinuities_of_inverse_power(n);
    forward.insert(forward.end(), backward.begin(), backward.end());
    for (const auto& d : forward) {
      if (d <= w && d > a) a = d;
      if (d > w && d < b) b = d;
    }
  }
  auto inside = [&](const Real& x) {
    using std::abs;
    return x >= a && x < b && to_double(Real(abs(x - w))) < eps;
  };

  const auto base = t.orbit(w, -n, n);
  Real x = w2;
  for (long l = 0; l <= search_limit; ++l) {
    if (l > 0) x = t.apply(x);
    if (!inside(x)) continue;
    const auto other = t.orbit(x, -n, n);
    double worst = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i) {
      using std::abs;
      worst = std::max(worst, to_double(Real(abs(base[i] - other[i]))));
    }
    if (worst < eps) return Alignment{l, worst, to_double(a), to_double(b)};
  }
  return std::nullopt;
}

}  // namespace iet
