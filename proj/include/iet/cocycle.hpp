#pragma once

// Potentials V(n) = f(T^n w), the Schrodinger transfer matrices they drive,
// and Lyapunov exponent estimates.

#include "iet/iet.hpp"
#include "iet/sampling.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace iet {

/// V(n) = f(T^n w) on the half-open window [n_from, n_to).
class Potential {
 public:
  Potential() = default;
  Potential(long n_from, std::vector<double> values);

  long n_from() const noexcept { return n_from_; }
  long n_to() const noexcept { return n_from_ + static_cast<long>(values_.size()); }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  bool covers(long a, long b) const noexcept { return a >= n_from() && b <= n_to(); }
  /// V(n); throws ArgumentError outside the window.
  double operator()(long n) const;
  const std::vector<double>& values() const noexcept { return values_; }
  /// Values on [a, b), which must lie inside the window.
  std::span<const double> slice(long a, long b) const;

 private:
  long n_from_ = 0;
  std::vector<double> values_;
};

Potential potential(const Iet& t, const SamplingFunction& f, double w, long n_from, long n_to);

/// (H psi)(n) = psi(n+1) + psi(n-1) + V(n) psi(n), with psi indexed by the
/// window of v and taken to be zero outside it.
std::vector<double> apply_operator(const Potential& v, const std::vector<double>& psi);

struct Mat2 {
  double a = 1, b = 0, c = 0, d = 1;  // [[a, b], [c, d]]

  double det() const { return a * d - b * c; }
  /// Operator 2-norm.
  double norm() const;
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
};

/// A_E at a site with potential value v: [[E - v, -1], [1, 0]].
inline Mat2 transfer_step(double energy, double v) { return {energy - v, -1.0, 1.0, 0.0}; }

/// Running product A(v_{n-1}) ... A(v_0) held as Q R with Q a rotation and
/// R upper triangular. The logs of the diagonal of R are accumulated
/// separately, so the product never overflows and its determinant can be
/// read back as exp(log r11 + log r22).
class CocycleProduct {
 public:
  explicit CocycleProduct(double energy) : energy_(energy) {}

  /// Multiplies on the left by A_E(v).
  void step(double v);
  void run(std::span<const double> vs) {
    for (double v : vs) step(v);
  }

  double energy() const noexcept { return energy_; }
  long steps() const noexcept { return steps_; }
  /// log r11: the product equals exp(log_norm()) * unit_matrix().
  double log_norm() const;
  Mat2 unit_matrix() const;
  /// log |det| of the full product from the bookkeeping (0 up to rounding).
  double log_det() const;
  double det() const;
  /// log of the operator norm of the full product.
  double log_operator_norm() const;
  /// log_operator_norm() / steps().
  double quotient() const;

 private:
  static constexpr int kFlushEvery = 16;
  void flush() const;

  double energy_;
  long steps_ = 0;
  double c_ = 1.0, s_ = 0.0;  // Q = [[c, -s], [s, c]]
  double t_ = 0.0;            // r12 / r11
  double rho_ = 1.0;          // r22 / r11
  mutable double log_r11_ = 0.0, log_r22_ = 0.0;
  mutable double pending_r11_ = 1.0, pending_r22_ = 1.0;
  mutable int pending_ = 0;
};

/// A_E(T^{n-1} w) ... A_E(w).
CocycleProduct cocycle_product(const Iet& t, const SamplingFunction& f, double w, double energy,
                               long n);

struct LyapunovEstimate {
  double energy = 0.0;
  long n = 0;
  long m_samples = 0;
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t seed = 0;
};

/// Base points for the Lebesgue average: m uniform draws from a generator
/// seeded with `seed`.
std::vector<double> sample_points(std::uint64_t seed, long m);

/// Mean and standard error of the finite-n quotient over m_samples uniform
/// base points.
LyapunovEstimate lyapunov(const Iet& t, const SamplingFunction& f, double energy, long n,
                          long m_samples, std::uint64_t seed);

/// lyapunov() at every energy of the grid. All energies share the same base
/// points, so each entry equals the single-energy call with the same seed and
/// the result does not depend on grid order or thread count.
std::vector<LyapunovEstimate> lyapunov_grid(const Iet& t, const SamplingFunction& f,
                                            const std::vector<double>& energies, long n,
                                            long m_samples, std::uint64_t seed, int threads = 1);

}  // namespace iet
