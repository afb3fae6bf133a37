#include "iet/cocycle.hpp"

#include "iet/errors.hpp"
#include "iet/parallel.hpp"

#include <cmath>
#include <random>

namespace iet {

Potential::Potential(long n_from, std::vector<double> values)
    : n_from_(n_from), values_(std::move(values)) {}

double Potential::operator()(long n) const {
  if (n < n_from() || n >= n_to()) {
    throw ArgumentError("potential index " + std::to_string(n) + " outside window [" +
                        std::to_string(n_from()) + ", " + std::to_string(n_to()) + ")");
  }
  return values_[static_cast<std::size_t>(n - n_from_)];
}

std::span<const double> Potential::slice(long a, long b) const {
  if (a > b || !covers(a, b)) {
    throw ArgumentError("potential window [" + std::to_string(n_from()) + ", " +
                        std::to_string(n_to()) + ") does not cover [" + std::to_string(a) + ", " +
                        std::to_string(b) + ")");
  }
  return std::span<const double>(values_).subspan(static_cast<std::size_t>(a - n_from_),
                                                   static_cast<std::size_t>(b - a));
}

Potential potential(const Iet& t, const SamplingFunction& f, double w, long n_from, long n_to) {
  if (n_from > n_to) throw ArgumentError("potential window needs n_from <= n_to");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n_to - n_from));
  if (n_from < n_to) {
    double x = t.power(w, n_from);
    for (long n = n_from; n < n_to; ++n) {
      if (n > n_from) x = t.apply(x);
      values.push_back(f(x));
    }
  }
  return Potential(n_from, std::move(values));
}

std::vector<double> apply_operator(const Potential& v, const std::vector<double>& psi) {
  if (psi.size() != v.size()) {
    throw ArgumentError("psi has " + std::to_string(psi.size()) + " entries, window has " +
                        std::to_string(v.size()));
  }
  const std::size_t n = psi.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = v.values()[i] * psi[i];
    if (i > 0) s += psi[i - 1];
    if (i + 1 < n) s += psi[i + 1];
    out[i] = s;
  }
  return out;
}

double Mat2::norm() const {
  // sigma_max = (|z1| + |z2|) / 2 with z1 = (a + d, b - c), z2 = (a - d, b + c).
  return 0.5 * (std::hypot(a + d, b - c) + std::hypot(a - d, b + c));
}

// ---------------------------------------------------------------------------

void CocycleProduct::step(double v) {
  const double e = energy_ - v;
  // M = A Q, A = [[e, -1], [1, 0]], Q = [[c, -s], [s, c]].
  const double m00 = e * c_ - s_;
  const double m01 = -e * s_ - c_;
  const double m10 = c_;
  const double m11 = -s_;
  const double r11 = std::sqrt(m00 * m00 + m10 * m10);
  const double c = m00 / r11;
  const double s = m10 / r11;
  const double r12 = c * m01 + s * m11;
  const double r22 = c * m11 - s * m01;

  t_ += (r12 / r11) * rho_;
  rho_ *= r22 / r11;
  c_ = c;
  s_ = s;
  pending_r11_ *= r11;
  pending_r22_ *= std::abs(r22);
  ++steps_;
  if (++pending_ == kFlushEvery) flush();
}

void CocycleProduct::flush() const {
  log_r11_ += std::log(pending_r11_);
  log_r22_ += std::log(pending_r22_);
  pending_r11_ = pending_r22_ = 1.0;
  pending_ = 0;
}

double CocycleProduct::log_norm() const {
  flush();
  return log_r11_;
}

Mat2 CocycleProduct::unit_matrix() const {
  // Q [[1, t], [0, rho]].
  return Mat2{c_, c_ * t_ - s_ * rho_, s_, s_ * t_ + c_ * rho_};
}

double CocycleProduct::log_det() const {
  flush();
  return log_r11_ + log_r22_;
}

double CocycleProduct::det() const {
  // The sign of det is carried by rho.
  return std::copysign(std::exp(log_det()), rho_);
}

double CocycleProduct::log_operator_norm() const {
  return log_norm() + std::log(Mat2{1.0, t_, 0.0, rho_}.norm());
}

double CocycleProduct::quotient() const {
  return steps_ == 0 ? 0.0 : log_operator_norm() / static_cast<double>(steps_);
}

CocycleProduct cocycle_product(const Iet& t, const SamplingFunction& f, double w, double energy,
                               long n) {
  if (n < 1) throw ArgumentError("cocycle_product needs n >= 1");
  CocycleProduct p(energy);
  double x = w;
  for (long k = 0; k < n; ++k) {
    if (k > 0) x = t.apply(x);
    p.step(f(x));
  }
  return p;
}

// ---------------------------------------------------------------------------

std::vector<double> sample_points(std::uint64_t seed, long m) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> out(static_cast<std::size_t>(m));
  for (auto& w : out) w = unit(rng);
  return out;
}

namespace {

LyapunovEstimate summarize(double energy, long n, std::uint64_t seed,
                           const std::vector<double>& quotients) {
  LyapunovEstimate est;
  est.energy = energy;
  est.n = n;
  est.m_samples = static_cast<long>(quotients.size());
  est.seed = seed;
  double sum = 0.0;
  for (double q : quotients) sum += q;
  const double m = static_cast<double>(quotients.size());
  est.mean = sum / m;
  if (quotients.size() > 1) {
    double ss = 0.0;
    for (double q : quotients) ss += (q - est.mean) * (q - est.mean);
    est.std_error = std::sqrt(ss / (m - 1) / m);
  }
  // Norms of SL(2, R) products are >= 1; a negative mean is rounding.
  if (est.mean < 0.0) est.mean = 0.0;
  return est;
}

}  // namespace

LyapunovEstimate lyapunov(const Iet& t, const SamplingFunction& f, double energy, long n,
                          long m_samples, std::uint64_t seed) {
  return lyapunov_grid(t, f, {energy}, n, m_samples, seed).front();
}

std::vector<LyapunovEstimate> lyapunov_grid(const Iet& t, const SamplingFunction& f,
                                            const std::vector<double>& energies, long n,
                                            long m_samples, std::uint64_t seed, int threads) {
  if (energies.empty()) throw ArgumentError("energy grid is empty");
  if (n < 1 || m_samples < 1) throw ArgumentError("lyapunov needs n >= 1 and m_samples >= 1");
  for (double e : energies) {
    if (!std::isfinite(e)) throw ArgumentError("energy grid contains a non-finite value");
  }

  const auto points = sample_points(seed, m_samples);
  std::vector<Potential> potentials(points.size());
  parallel_for(points.size(), threads,
               [&](std::size_t i) { potentials[i] = potential(t, f, points[i], 0, n); });

  std::vector<double> quotients(energies.size() * points.size());
  parallel_for(quotients.size(), threads, [&](std::size_t idx) {
    const std::size_t e = idx / points.size();
    const std::size_t i = idx % points.size();
    CocycleProduct p(energies[e]);
    p.run(potentials[i].values());
    quotients[idx] = p.quotient();
  });

  std::vector<LyapunovEstimate> out;
  out.reserve(energies.size());
  for (std::size_t e = 0; e < energies.size(); ++e) {
    std::vector<double> qs(quotients.begin() + static_cast<long>(e * points.size()),
                           quotients.begin() + static_cast<long>((e + 1) * points.size()));
    out.push_back(summarize(energies[e], n, seed, qs));
  }
  return out;
}

}  // namespace iet
