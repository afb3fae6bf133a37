#include "iet/sampling.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <random>

namespace iet {

const char* to_string(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::constant: return "constant";
    case FunctionKind::cosine: return "cosine";
    case FunctionKind::piecewise_linear: return "piecewise_linear";
    case FunctionKind::step: return "step";
    case FunctionKind::trig_polynomial: return "trig_polynomial";
  }
  return "unknown";
}

namespace {

constexpr double kConstantSpread = 1e-9;

std::vector<double> sample_grid(const SamplingFunction& f, int n) {
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = f(static_cast<double>(i) / n);
  return values;
}

void check_table(const std::vector<double>& xs, const std::vector<double>& ys, bool closed) {
  if (xs.size() != ys.size() || xs.size() < (closed ? 2u : 1u)) {
    throw ArgumentError("function table needs matching breakpoint and value arrays");
  }
  if (xs.front() != 0.0) throw ArgumentError("function table must start at 0");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) throw ArgumentError("function table breakpoints must increase");
  }
  if (closed && xs.back() != 1.0) throw ArgumentError("piecewise-linear table must end at 1");
  if (!closed && xs.back() >= 1.0) throw ArgumentError("step table breakpoints must be < 1");
}

}  // namespace

SamplingFunction SamplingFunction::constant(double c) {
  SamplingFunction f;
  f.kind_ = FunctionKind::constant;
  f.c0_ = c;
  f.derive_metadata();
  return f;
}

SamplingFunction SamplingFunction::cosine(double lambda) {
  SamplingFunction f;
  f.kind_ = FunctionKind::cosine;
  f.c0_ = lambda;
  f.derive_metadata();
  return f;
}

SamplingFunction SamplingFunction::piecewise_linear(std::vector<double> xs, std::vector<double> ys) {
  check_table(xs, ys, true);
  SamplingFunction f;
  f.kind_ = FunctionKind::piecewise_linear;
  f.xs_ = std::move(xs);
  f.ys_ = std::move(ys);
  f.derive_metadata();
  return f;
}

SamplingFunction SamplingFunction::step(std::vector<double> xs, std::vector<double> ys) {
  check_table(xs, ys, false);
  SamplingFunction f;
  f.kind_ = FunctionKind::step;
  f.xs_ = std::move(xs);
  f.ys_ = std::move(ys);
  f.derive_metadata();
  return f;
}

SamplingFunction SamplingFunction::trig_polynomial(double c0, std::vector<double> cos_coeffs,
                                                   std::vector<double> sin_coeffs) {
  SamplingFunction f;
  f.kind_ = FunctionKind::trig_polynomial;
  f.c0_ = c0;
  f.ys_ = std::move(cos_coeffs);
  f.sin_ = std::move(sin_coeffs);
  f.derive_metadata();
  return f;
}

void SamplingFunction::derive_metadata() {
  FunctionMetadata m;
  constexpr double two_pi = 2 * std::numbers::pi;
  switch (kind_) {
    case FunctionKind::constant:
      m.lipschitz_constant = 0.0;
      m.circle_continuous = true;
      m.continuously_differentiable = true;
      sup_norm_ = std::abs(c0_);
      break;
    case FunctionKind::cosine:
      m.lipschitz_constant = two_pi * std::abs(c0_);
      m.level_set_bound = 2;
      m.circle_continuous = true;
      m.continuously_differentiable = true;
      if (c0_ != 0.0) m.nondeg_max = NondegenerateMax{c0_ > 0 ? 0.0 : 0.5, {}};
      sup_norm_ = std::abs(c0_);
      break;
    case FunctionKind::trig_polynomial: {
      double lip = 0.0;
      for (std::size_t k = 0; k < ys_.size(); ++k) lip += two_pi * static_cast<double>(k + 1) * std::abs(ys_[k]);
      for (std::size_t k = 0; k < sin_.size(); ++k) lip += two_pi * static_cast<double>(k + 1) * std::abs(sin_[k]);
      m.lipschitz_constant = lip;
      // A real trigonometric polynomial of degree d has at most 2d roots per period.
      m.level_set_bound = 2 * static_cast<int>(std::max(ys_.size(), sin_.size()));
      m.circle_continuous = true;
      m.continuously_differentiable = true;
      break;
    }
    case FunctionKind::piecewise_linear: {
      double lip = 0.0;
      bool flat = false;
      for (std::size_t i = 1; i < xs_.size(); ++i) {
        const double slope = (ys_[i] - ys_[i - 1]) / (xs_[i] - xs_[i - 1]);
        lip = std::max(lip, std::abs(slope));
        flat = flat || slope == 0.0;
      }
      m.lipschitz_constant = lip;
      if (!flat) m.level_set_bound = static_cast<int>(xs_.size() - 1);
      m.circle_continuous = ys_.front() == ys_.back();
      m.continuously_differentiable = xs_.size() == 2;
      sup_norm_ = 0.0;
      for (double y : ys_) sup_norm_ = std::max(sup_norm_, std::abs(y));
      break;
    }
    case FunctionKind::step:
      m.continuous = false;
      sup_norm_ = 0.0;
      for (double y : ys_) sup_norm_ = std::max(sup_norm_, std::abs(y));
      break;
  }
  meta_ = m;
  const auto values = sample_grid(*this, 10'000);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  meta_.is_constant = (*hi - *lo) <= kConstantSpread;
  if (meta_.is_constant) meta_.level_set_bound.reset();
  if (kind_ == FunctionKind::trig_polynomial) {
    sup_norm_ = std::max(std::abs(*lo), std::abs(*hi));
  }
}

SamplingFunction SamplingFunction::with_metadata(FunctionMetadata meta) const {
  if (auto failure = verify_metadata(*this, meta)) {
    throw ArgumentError("declared function metadata rejected: " + *failure);
  }
  SamplingFunction out = *this;
  out.meta_ = std::move(meta);
  return out;
}

double SamplingFunction::limit_at_one() const {
  if (kind_ == FunctionKind::piecewise_linear || kind_ == FunctionKind::step) return ys_.back();
  return eval_unchecked(1.0);
}

double SamplingFunction::left_limit(double x) const {
  if (!(x > 0.0) || !(x <= 1.0)) {
    throw DomainError("left limit requested at " + std::to_string(x) + " outside (0, 1]");
  }
  if (x == 1.0) return meta_.circle_continuous ? eval_unchecked(0.0) : limit_at_one();
  if (kind_ == FunctionKind::step) {
    auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
    return ys_[static_cast<std::size_t>(it - xs_.begin()) - 1];
  }
  return eval_unchecked(x);
}

std::optional<std::string> verify_metadata(const SamplingFunction& f, const FunctionMetadata& meta,
                                           int grid) {
  const auto values = sample_grid(f, grid);
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it, hi = *hi_it;
  const bool constant = (hi - lo) <= kConstantSpread;
  if (meta.is_constant != constant) {
    return std::string("is_constant declared ") + (meta.is_constant ? "true" : "false") +
           " but grid spread is " + std::to_string(hi - lo);
  }
  const double h = 1.0 / grid;
  if (meta.lipschitz_constant) {
    const double k = *meta.lipschitz_constant;
    if (k < 0) return "negative Lipschitz constant";
    for (std::size_t i = 1; i < values.size(); ++i) {
      const double ratio = std::abs(values[i] - values[i - 1]) / h;
      if (ratio > k * (1 + 1e-9) + 1e-9) {
        return "Lipschitz ratio " + std::to_string(ratio) + " exceeds declared " + std::to_string(k);
      }
    }
  }
  if (meta.level_set_bound) {
    const int bound = *meta.level_set_bound;
    constexpr int kLevels = 200;
    for (int l = 1; l < kLevels; ++l) {
      const double y = lo + (hi - lo) * l / kLevels;
      int crossings = 0;
      for (std::size_t i = 0; i < values.size(); ++i) {
        const double g = values[i] - y;
        if (g == 0.0) {
          ++crossings;
        } else if (i + 1 < values.size()) {
          const double g2 = values[i + 1] - y;
          if ((g < 0 && g2 > 0) || (g > 0 && g2 < 0)) ++crossings;
        }
      }
      if (crossings > bound) {
        return "level set at " + std::to_string(y) + " has " + std::to_string(crossings) +
               " grid crossings, declared bound " + std::to_string(bound);
      }
    }
  }
  if (meta.nondeg_max) {
    const double loc = meta.nondeg_max->location;
    if (!(loc >= 0.0 && loc < 1.0)) return "maximum location outside [0, 1)";
    if (f(loc) < hi - 1e-9 * std::max(1.0, std::abs(hi))) {
      return "declared maximum at " + std::to_string(loc) + " is below the grid maximum";
    }
  }
  if (meta.circle_continuous && std::abs(f(0.0) - f.limit_at_one()) > 1e-9) {
    return "declared circle-continuous but f(0) != f(1-)";
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

double power_gap(const Iet& t, const SamplingFunction& f, long n, double wd) {
  if (!(wd > 0.0 && wd < 1.0)) throw DomainError("power_gap needs wd in (0, 1)");
  const double left = t.left_limit_power(wd, n);
  const double right = t.power(wd, n);
  return std::abs(f.left_limit(left) - f(right));
}

std::optional<MainCondWitness> scan_maincond(const Iet& t, const SamplingFunction& f, long n_max,
                                             double tau) {
  if (n_max < 1) throw ArgumentError("scan_maincond needs n_max >= 1");
  for (long n = 1; n <= n_max; ++n) {
    for (double wd : t.discontinuities_of_power(n)) {
      const double gap = power_gap(t, f, n, wd);
      if (gap > tau) return MainCondWitness{n, wd, gap};
    }
  }
  return std::nullopt;
}

double numeric_jump(const Iet& t, const SamplingFunction& f, long n, double wd, double h) {
  return std::abs(f(t.power(wd - h, n)) - f(t.power(wd + h, n)));
}

WitnessReport kotani_pair_witness(const Iet& t, const SamplingFunction& f, long n, double wd,
                                  long depth, const std::vector<long>& ks) {
  if (n < 1 || depth < 0) throw ArgumentError("kotani_pair_witness needs n >= 1, depth >= 0");
  if (ks.empty()) throw ArgumentError("kotani_pair_witness needs at least one k");
  if (!(wd > 0.0 && wd < 1.0)) throw DomainError("kotani_pair_witness needs wd in (0, 1)");

  // T^{-m} is continuous at wd for m <= depth iff the backward orbit of wd
  // avoids the breakpoints of T^{-1}.
  const auto inverse_breaks = t.inverse_breakpoints();
  double x = wd;
  for (long m = 0; m < depth; ++m) {
    for (double b : inverse_breaks) {
      if (std::abs(x - b) <= ScalarTraits<double>::tolerance()) {
        throw ArgumentError("T^{-" + std::to_string(m + 1) +
                            "} is discontinuous at wd: backward step " + std::to_string(m) +
                            " lands on a breakpoint of T^{-1}");
      }
    }
    x = t.apply_inverse(x);
  }

  WitnessReport report;
  report.n = n;
  report.wd = wd;
  report.depth = depth;
  report.ks = ks;
  report.gap = power_gap(t, f, n, wd);
  for (long k : ks) {
    if (k < 1) throw ArgumentError("kotani_pair_witness needs k >= 1");
    const double h = 1.0 / static_cast<double>(k);
    const double lo = wd - h, hi = wd + h;
    if (!(lo >= 0.0 && hi < 1.0)) throw DomainError("1/k too large for wd");
    report.forward_gaps.push_back(std::abs(f(t.power(lo, n)) - f(t.power(hi, n))));
    double worst = 0.0;
    double a = lo, b = hi;
    for (long m = 0; m <= depth; ++m) {
      if (m > 0) {
        a = t.apply_inverse(a);
        b = t.apply_inverse(b);
      }
      worst = std::max(worst, std::abs(f(a) - f(b)));
    }
    report.backward_max.push_back(worst);
  }

  constexpr double slack = 0.10;
  report.forward_converges =
      report.gap > 0.0 && std::abs(report.forward_gaps.back() - report.gap) <= slack * report.gap;
  report.backward_shrinks = true;
  for (std::size_t i = 1; i < report.backward_max.size(); ++i) {
    if (report.backward_max[i] > (1 + slack) * report.backward_max[i - 1] + 1e-12) {
      report.backward_shrinks = false;
    }
  }
  report.backward_shrinks =
      report.backward_shrinks && report.backward_max.back() < report.forward_gaps.back();
  report.verdict = report.forward_converges && report.backward_shrinks;
  return report;
}

double lipschitz_propagation(const Iet& t, const SamplingFunction& f, long n, long samples,
                             std::uint64_t seed) {
  if (!f.metadata().lipschitz_constant) {
    throw ArgumentError("lipschitz_propagation needs a Lipschitz constant in the metadata");
  }
  if (n < 0 || samples < 1) throw ArgumentError("lipschitz_propagation needs n >= 0, samples >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> log_step(-6.0, -1.0);
  double best = 0.0;
  for (long s = 0; s < samples; ++s) {
    const double x = unit(rng);
    const double h = std::pow(10.0, log_step(rng));
    const double y = x + h < 1.0 ? x + h : x - h;
    const double ratio = std::abs(f(t.power(x, n)) - f(t.power(y, n))) / std::abs(x - y);
    best = std::max(best, ratio);
  }
  return best;
}

NondegMaxTable nondegenerate_max_check(const SamplingFunction& f,
                                       const std::vector<double>& eps_grid, int grid) {
  const auto& meta = f.metadata();
  if (!meta.nondeg_max) throw ArgumentError("nondegenerate_max_check needs a declared maximum");
  NondegMaxTable table;
  table.location = meta.nondeg_max->location;
  const double fmax = f(table.location);
  const bool circle = meta.circle_continuous;
  const auto values = sample_grid(f, grid);

  table.passes = true;
  for (double eps : eps_grid) {
    double far_sup = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
      const double x = static_cast<double>(i) / grid;
      double d = std::abs(x - table.location);
      if (circle) d = std::min(d, 1.0 - d);
      if (d > eps) far_sup = std::max(far_sup, values[static_cast<std::size_t>(i)]);
    }
    const double delta = fmax - far_sup;
    table.entries.emplace_back(eps, delta);
    if (!(delta > 1e-12)) table.passes = false;
  }
  return table;
}

}  // namespace iet
