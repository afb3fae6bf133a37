#pragma once

// Sampling functions f: [0,1) -> R and the scans that look for discontinuous
// powers f o T^n.

#include "iet/function_metadata.hpp"
#include "iet/iet.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace iet {

enum class FunctionKind { constant, cosine, piecewise_linear, step, trig_polynomial };

const char* to_string(FunctionKind kind);

class SamplingFunction {
 public:
  static SamplingFunction constant(double c);
  /// lambda * cos(2 pi x).
  static SamplingFunction cosine(double lambda);
  /// Linear interpolation of (xs[i], ys[i]); xs strictly increasing from 0 to 1.
  static SamplingFunction piecewise_linear(std::vector<double> xs, std::vector<double> ys);
  /// f(x) = ys[i] on [xs[i], xs[i+1]); xs strictly increasing, xs[0] == 0, all < 1.
  static SamplingFunction step(std::vector<double> xs, std::vector<double> ys);
  /// c0 + sum_k cos_coeffs[k-1] cos(2 pi k x) + sin_coeffs[k-1] sin(2 pi k x).
  static SamplingFunction trig_polynomial(double c0, std::vector<double> cos_coeffs,
                                          std::vector<double> sin_coeffs);

  /// Replaces the derived metadata with `meta`, after spot-checking it on a
  /// 10^4-point grid. Throws ArgumentError if a declared property fails.
  SamplingFunction with_metadata(FunctionMetadata meta) const;

  FunctionKind kind() const noexcept { return kind_; }
  const FunctionMetadata& metadata() const noexcept { return meta_; }
  /// sup |f| over [0, 1).
  double sup_norm() const noexcept { return sup_norm_; }
  const std::vector<double>& xs() const noexcept { return xs_; }
  const std::vector<double>& ys() const noexcept { return ys_; }
  double c0() const noexcept { return c0_; }

  /// f(x) for x in [0, 1); works for double and the multiprecision reals.
  template <class Real>
  Real eval(const Real& x) const;
  double operator()(double x) const { return eval(x); }
  /// lim_{y -> x-} f(y) for x in (0, 1]. Circle-continuous functions return
  /// f(0) at x = 1 exactly.
  double left_limit(double x) const;
  /// lim_{x -> 1-} f(x) computed from the formula or table, ignoring metadata.
  double limit_at_one() const;

 private:
  SamplingFunction() = default;
  void derive_metadata();
  template <class Real>
  Real eval_unchecked(const Real& x) const;

  FunctionKind kind_ = FunctionKind::constant;
  double c0_ = 0.0;     // constant value, cosine amplitude, or trig constant term
  std::vector<double> xs_;
  std::vector<double> ys_;  // table values, or cosine coefficients for trig
  std::vector<double> sin_;
  FunctionMetadata meta_;
  double sup_norm_ = 0.0;
};

/// Spot-checks `meta` against f on an n-point grid; returns a description of
/// the first failure, or nullopt when everything checks out.
std::optional<std::string> verify_metadata(const SamplingFunction& f, const FunctionMetadata& meta,
                                           int grid = 10'000);

// ---------------------------------------------------------------------------
// Discontinuity scans

/// |f(lim_{x -> wd-} T^n x) - f(T^n wd)|.
double power_gap(const Iet& t, const SamplingFunction& f, long n, double wd);

struct MainCondWitness {
  long n = 0;
  double wd = 0.0;
  double gap = 0.0;
};

/// First (n, wd) in lexicographic order with n <= n_max, wd a candidate
/// discontinuity of T^n and power_gap > tau. Empty proves nothing.
std::optional<MainCondWitness> scan_maincond(const Iet& t, const SamplingFunction& f, long n_max,
                                             double tau = 1e-6);

/// |f(T^n(wd - h)) - f(T^n(wd + h))|, the numeric two-sided jump.
double numeric_jump(const Iet& t, const SamplingFunction& f, long n, double wd, double h);

struct WitnessReport {
  long n = 0;
  double wd = 0.0;
  long depth = 0;
  double gap = 0.0;
  std::vector<long> ks;
  /// |f(T^n w_k) - f(T^n w^_k)| with w_k = wd - 1/k, w^_k = wd + 1/k.
  std::vector<double> forward_gaps;
  /// max over 0 <= m <= depth of |f(T^{-m} w_k) - f(T^{-m} w^_k)|.
  std::vector<double> backward_max;
  bool forward_converges = false;
  bool backward_shrinks = false;
  bool verdict = false;
};

/// Builds the two sequences approaching wd from both sides and reports how
/// the forward jump and the backward differences behave along ks. Throws
/// ArgumentError if some T^{-m}, m <= depth, is discontinuous at wd.
WitnessReport kotani_pair_witness(const Iet& t, const SamplingFunction& f, long n, double wd,
                                  long depth, const std::vector<long>& ks);

/// Empirical sup of |f(T^n x) - f(T^n y)| / |x - y| over `samples` random
/// nearby pairs.
double lipschitz_propagation(const Iet& t, const SamplingFunction& f, long n, long samples,
                             std::uint64_t seed);

struct NondegMaxTable {
  double location = 0.0;
  std::vector<std::pair<double, double>> entries;  // (epsilon, delta)
  bool passes = false;
};

/// For each epsilon, the largest delta such that f(x) >= f(max) - delta
/// implies dist(x, max) <= epsilon on a 10^5-point grid. Distances are taken
/// on the circle when f is circle-continuous.
NondegMaxTable nondegenerate_max_check(const SamplingFunction& f,
                                       const std::vector<double>& eps_grid, int grid = 100'000);

// ===========================================================================

template <class Real>
Real SamplingFunction::eval(const Real& x) const {
  if (!(x >= 0) || !(x < 1)) {
    throw DomainError("sampling function evaluated at " + std::to_string(to_double(x)) +
                      " outside [0, 1)");
  }
  return eval_unchecked(x);
}

template <class Real>
Real SamplingFunction::eval_unchecked(const Real& x) const {
  using std::cos;
  using std::sin;
  const Real two_pi = 2 * boost::math::constants::pi<Real>();
  switch (kind_) {
    case FunctionKind::constant:
      return Real(c0_);
    case FunctionKind::cosine:
      return Real(c0_) * cos(two_pi * x);
    case FunctionKind::trig_polynomial: {
      Real out = c0_;
      for (std::size_t k = 0; k < ys_.size(); ++k) {
        out += Real(ys_[k]) * cos(two_pi * Real(static_cast<double>(k + 1)) * x);
      }
      for (std::size_t k = 0; k < sin_.size(); ++k) {
        out += Real(sin_[k]) * sin(two_pi * Real(static_cast<double>(k + 1)) * x);
      }
      return out;
    }
    case FunctionKind::piecewise_linear: {
      const double xd = to_double(x);
      auto it = std::upper_bound(xs_.begin(), xs_.end(), xd);
      auto i = static_cast<std::size_t>(it - xs_.begin());
      if (i == 0) i = 1;
      if (i >= xs_.size()) i = xs_.size() - 1;
      const double x0 = xs_[i - 1], x1 = xs_[i];
      const Real slope = Real((ys_[i] - ys_[i - 1]) / (x1 - x0));
      return Real(ys_[i - 1]) + slope * (x - Real(x0));
    }
    case FunctionKind::step: {
      const double xd = to_double(x);
      auto it = std::upper_bound(xs_.begin(), xs_.end(), xd);
      return Real(ys_[static_cast<std::size_t>(it - xs_.begin()) - 1]);
    }
  }
  return Real(0);
}

}  // namespace iet
