#pragma once

// Gordon-type near-periodicity of potentials, return times of IET orbits, and
// explicit Liouville rotations built from continued fractions.

#include "iet/cocycle.hpp"
#include "iet/errors.hpp"
#include "iet/iet.hpp"
#include "iet/numeric.hpp"
#include "iet/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace iet {

/// [a_0; a_1, a_2, ...] with a_0 >= 0 and a_k >= 1 for k >= 1.
class ContinuedFraction {
 public:
  ContinuedFraction() : ContinuedFraction(BigInt(0), {}) {}
  ContinuedFraction(BigInt a0, std::vector<BigInt> quotients);

  /// Parses "[a0; a1, a2, ...]"; "[a0]" and "[a0;]" have no quotients.
  static ContinuedFraction parse(std::string_view text);
  std::string to_string() const;

  const BigInt& a0() const noexcept { return a0_; }
  /// a_1, a_2, ...
  const std::vector<BigInt>& quotients() const noexcept { return a_; }
  std::size_t size() const noexcept { return a_.size(); }
  void push_back(BigInt a);

  /// Convergents p_k / q_k for 0 <= k <= size().
  const BigInt& p(std::size_t k) const { return p_.at(k); }
  const BigInt& q(std::size_t k) const { return q_.at(k); }
  /// p_k q_{k-1} - p_{k-1} q_k, which must be (-1)^{k-1}; k >= 1.
  BigInt determinant(std::size_t k) const;

  /// The finite fraction as an exact rational p_K / q_K.
  Rational value() const;
  HighPrecision high_precision_value() const;

 private:
  BigInt a0_;
  std::vector<BigInt> a_;
  std::vector<BigInt> p_;
  std::vector<BigInt> q_;
};

/// Continued fraction of a rational, shortest form (last quotient > 1 unless
/// it is a_1 = 1).
ContinuedFraction continued_fraction_of(const Rational& x);

/// sup over 0 <= j < q of max(|V(j) - V(j + q)|, |V(j) - V(j - q)|). The
/// window must cover [-q, 2q).
double gordon_sup_diff(const Potential& v, long q);

/// Distance on [0, 1) with 0 and 1 identified.
template <class Real>
Real circle_distance(const Real& x, const Real& y) {
  using std::abs;
  const Real d = abs(x - y);
  return d > Real(0.5) ? Real(1) - d : d;
}

struct ReturnTime {
  long q = 0;
  /// d(q) = sup_{0 <= j < q} max(|T^j w - T^{j+q} w|, |T^j w - T^{j-q} w|),
  /// in the circle distance.
  double displacement = 0.0;
};

/// The `top` values q in [1, q_max] with smallest d(q), sorted by
/// displacement, ties by q. Uses one orbit window [-q_max, 2 q_max).
template <class Real>
std::vector<ReturnTime> find_return_times(const BasicIet<Real>& t, const Real& w, long q_max,
                                          long top);

/// Largest d(q) over the window, in the precision of the IET.
template <class Real>
Real orbit_displacement(const BasicIet<Real>& t, const Real& w, long q);

/// f(q) = exp(-rate q) or q^{-rate}.
struct GrowthSpec {
  enum class Kind { exponential, power };
  Kind kind = Kind::exponential;
  double rate = 1.0;

  /// "exp:3" or "power:2".
  static GrowthSpec parse(std::string_view text);
  std::string to_string() const;
  HighPrecision log_value(const BigInt& q) const;
};

struct LiouvilleBound {
  long k = 0;
  BigInt q;
  BigInt q_next;
  /// log f(q_k) and log(1 / q_{k+1}) >= log ||q_k alpha||.
  HighPrecision log_growth;
  HighPrecision log_bound;
  /// q_k / q_{k+1} <= f(q_k).
  bool holds = false;
  /// Set when q_k was small enough for a direct orbit check.
  std::optional<HighPrecision> orbit_displacement;
};

struct LiouvilleRotation {
  GrowthSpec growth;
  ContinuedFraction cf;
  HighPrecision alpha;
  /// One entry per k = 0 .. K-1, where K = number of quotients.
  std::vector<LiouvilleBound> bounds;
  std::vector<std::string> notes;

  /// x -> x + alpha mod 1 as a two-interval exchange.
  HighPrecisionIet iet() const;
};

inline constexpr int kMaxLiouvilleQuotients = 8;
/// Quotients with more decimal digits than this are refused.
inline constexpr long kMaxQuotientDigits = 100000;
/// Orbit checks are run for q_k up to this size.
inline constexpr long kMaxOrbitCheck = 1000000;

/// Greedy construction: a_{k+1} is the smallest integer >= 1 with
/// q_k / q_{k+1} <= f(q_k), starting from q_0 = 1. Throws NumericError when a
/// quotient would exceed kMaxQuotientDigits.
LiouvilleRotation build_liouville_rotation(const GrowthSpec& growth, int k_max);

struct CVerdict {
  double C = 0.0;
  /// s_k exp(C q_k), possibly inf.
  std::vector<double> products;
  bool verdict = false;
};

struct GordonCertificate {
  /// Rotation angle when the exchange is a rotation, in the IET's precision.
  std::optional<std::string> alpha_digits;
  std::vector<long> qs;
  std::vector<double> sup_diffs;
  std::vector<double> displacements;
  /// Lip(f) * d(q_k) when f carries circle-Lipschitz metadata.
  std::vector<double> chain_bounds;
  bool chain_ok = true;
  std::vector<CVerdict> verdicts;
};

/// Products s_k exp(C q_k) must be non-increasing in k and end either at 0 or
/// strictly below where they started.
CVerdict gordon_verdict(const std::vector<long>& qs, const std::vector<double>& sup_diffs, double C);

template <class Real>
GordonCertificate gordon_certificate(const BasicIet<Real>& t, const SamplingFunction& f,
                                     const Real& w, const std::vector<long>& qs,
                                     const std::vector<double>& Cs);

std::string decimal_string(const HighPrecision& x, int digits = kHighPrecisionDigits);

// ===========================================================================
// Implementation

namespace detail {

template <class Real>
std::vector<Real> orbit_window(const BasicIet<Real>& t, const Real& w, long q) {
  return t.orbit(w, -q, 2 * q - 1);
}

// Largest circle displacement between index j and j +- q, for 0 <= j < q, with
// the window starting at -q.
template <class Real>
Real window_displacement(const std::vector<Real>& orbit, long window_q, long q) {
  Real d = 0;
  for (long j = 0; j < q; ++j) {
    const auto i = static_cast<std::size_t>(j + window_q);
    const Real a = circle_distance(orbit[i], orbit[i + static_cast<std::size_t>(q)]);
    const Real b = circle_distance(orbit[i], orbit[i - static_cast<std::size_t>(q)]);
    if (a > d) d = a;
    if (b > d) d = b;
  }
  return d;
}

}  // namespace detail

template <class Real>
Real orbit_displacement(const BasicIet<Real>& t, const Real& w, long q) {
  if (q < 1) throw ArgumentError("return time q must be >= 1");
  const auto orbit = detail::orbit_window(t, w, q);
  return detail::window_displacement(orbit, q, q);
}

template <class Real>
std::vector<ReturnTime> find_return_times(const BasicIet<Real>& t, const Real& w, long q_max,
                                          long top) {
  if (q_max < 2) throw ArgumentError("find_return_times needs q_max >= 2");
  if (top < 1) throw ArgumentError("find_return_times needs top >= 1");
  const auto orbit = detail::orbit_window(t, w, q_max);
  std::vector<ReturnTime> all;
  all.reserve(static_cast<std::size_t>(q_max));
  for (long q = 1; q <= q_max; ++q) {
    all.push_back({q, to_double(detail::window_displacement(orbit, q_max, q))});
  }
  std::stable_sort(all.begin(), all.end(), [](const ReturnTime& a, const ReturnTime& b) {
    return a.displacement < b.displacement;
  });
  if (static_cast<long>(all.size()) > top) all.resize(static_cast<std::size_t>(top));
  return all;
}

template <class Real>
GordonCertificate gordon_certificate(const BasicIet<Real>& t, const SamplingFunction& f,
                                     const Real& w, const std::vector<long>& qs,
                                     const std::vector<double>& Cs) {
  if (qs.empty()) throw ArgumentError("gordon_certificate needs at least one q");
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (qs[i] < 1 || (i > 0 && qs[i] <= qs[i - 1])) {
      throw ArgumentError("qs must be positive and strictly increasing");
    }
  }
  GordonCertificate out;
  out.qs = qs;
  if (t.r() == 2 && t.perm()(1) == 2) {
    if constexpr (std::is_same_v<Real, double>) {
      out.alpha_digits = decimal_string(HighPrecision(t.lengths()[1]), 17);
    } else if constexpr (std::is_same_v<Real, HighPrecision>) {
      out.alpha_digits = decimal_string(t.lengths()[1]);
    } else {
      out.alpha_digits = to_string(t.lengths()[1]);
    }
  }
  const auto& meta = f.metadata();
  const bool chain = meta.lipschitz_constant.has_value() && meta.circle_continuous;

  for (long q : qs) {
    const auto orbit = detail::orbit_window(t, w, q);
    std::vector<Real> v;
    v.reserve(orbit.size());
    for (const auto& x : orbit) v.push_back(f.eval(x));
    Real s = 0;
    for (long j = 0; j < q; ++j) {
      using std::abs;
      const auto i = static_cast<std::size_t>(j + q);
      const Real a = abs(v[i] - v[i + static_cast<std::size_t>(q)]);
      const Real b = abs(v[i] - v[i - static_cast<std::size_t>(q)]);
      if (a > s) s = a;
      if (b > s) s = b;
    }
    const Real d = detail::window_displacement(orbit, q, q);
    out.sup_diffs.push_back(to_double(s));
    out.displacements.push_back(to_double(d));
    if (chain) {
      const Real bound = Real(*meta.lipschitz_constant) * d;
      out.chain_bounds.push_back(to_double(bound));
      // Rounding in f.eval allows a few ulps beyond the bound.
      if (to_double(s) > to_double(bound) * (1 + 1e-9) + 1e-15) out.chain_ok = false;
    }
  }
  for (double C : Cs) out.verdicts.push_back(gordon_verdict(out.qs, out.sup_diffs, C));
  return out;
}

}  // namespace iet
