#include "iet/spectrum.hpp"

#include "iet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace iet {

namespace {

// Pivots smaller than this are replaced by -kPivotMin before dividing.
constexpr double kPivotMin = 1e-290;

double distance_to_set(const std::vector<double>& sorted, double x) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  double best = std::numeric_limits<double>::infinity();
  if (it != sorted.end()) best = *it - x;
  if (it != sorted.begin()) best = std::min(best, x - *(it - 1));
  return best;
}

}  // namespace

long sturm_count(const std::vector<double>& diagonal, double x) {
  long count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < diagonal.size(); ++i) {
    q = diagonal[i] - x - (i == 0 ? 0.0 : 1.0 / q);
    if (std::abs(q) < kPivotMin) q = -kPivotMin;
    if (q < 0) ++count;
  }
  return count;
}

std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diagonal, double tol) {
  if (diagonal.empty()) throw ArgumentError("tridiagonal matrix must have size >= 1");
  if (!(tol > 0)) throw ArgumentError("eigenvalue tolerance must be positive");
  const long m = static_cast<long>(diagonal.size());
  const auto [dmin, dmax] = std::minmax_element(diagonal.begin(), diagonal.end());
  // Gershgorin discs have radius <= 2.
  const double slack = 1e-9 * (1.0 + std::max(std::abs(*dmin), std::abs(*dmax)));
  const double lo = *dmin - 2.0 - slack;
  const double hi = *dmax + 2.0 + slack;

  struct Bracket {
    double a, b;
    long ca, cb;  // sturm counts at a and b
  };
  std::vector<double> out(static_cast<std::size_t>(m));
  std::vector<Bracket> work{{lo, hi, 0, m}};
  while (!work.empty()) {
    const Bracket br = work.back();
    work.pop_back();
    if (br.cb <= br.ca) continue;
    const double mid = 0.5 * (br.a + br.b);
    const bool narrow = br.b - br.a <= tol;
    if (narrow && br.cb - br.ca == 1) {
      out[static_cast<std::size_t>(br.ca)] = mid;
      continue;
    }
    if (mid <= br.a || mid >= br.b) {
      // A cluster that cannot be split at double resolution.
      for (long k = br.ca; k < br.cb; ++k) out[static_cast<std::size_t>(k)] = mid;
      continue;
    }
    const long cm = std::clamp(sturm_count(diagonal, mid), br.ca, br.cb);
    work.push_back({mid, br.b, cm, br.cb});
    work.push_back({br.a, mid, br.ca, cm});
  }
  return out;
}

SpectrumApprox truncated_spectrum(const Potential& v, long M, double w) {
  if (M < 1) throw ArgumentError("truncation size M must be >= 1");
  const auto diag = v.slice(0, M);
  SpectrumApprox out;
  out.M = M;
  out.w = w;
  out.eigenvalues = tridiagonal_eigenvalues(std::vector<double>(diag.begin(), diag.end()));
  return out;
}

double spectrum_hausdorff(const SpectrumApprox& a, const SpectrumApprox& b) {
  if (a.eigenvalues.empty() || b.eigenvalues.empty()) {
    throw ArgumentError("Hausdorff distance needs two non-empty sets");
  }
  double d = 0.0;
  for (double x : a.eigenvalues) d = std::max(d, distance_to_set(b.eigenvalues, x));
  for (double x : b.eigenvalues) d = std::max(d, distance_to_set(a.eigenvalues, x));
  return d;
}

ACReport ac_indicator(const std::vector<LyapunovEstimate>& estimates, const SpectrumApprox& spectrum,
                      double tau) {
  if (estimates.size() < 2) throw ArgumentError("ac_indicator needs at least two grid points");
  if (spectrum.eigenvalues.empty()) throw ArgumentError("ac_indicator needs a non-empty spectrum");
  if (!(tau > 0)) throw ArgumentError("tau must be positive");
  auto grid = estimates;
  std::sort(grid.begin(), grid.end(),
            [](const LyapunovEstimate& x, const LyapunovEstimate& y) { return x.energy < y.energy; });
  const double need_lo = spectrum.eigenvalues.front() - 0.1;
  const double need_hi = spectrum.eigenvalues.back() + 0.1;
  if (grid.front().energy > need_lo + 1e-9 || grid.back().energy < need_hi - 1e-9) {
    throw ArgumentError("energy grid must cover [min eigenvalue - 0.1, max eigenvalue + 0.1]");
  }

  ACReport report;
  report.tau = tau;
  report.M = spectrum.M;
  report.n = grid.front().n;
  report.grid_points = static_cast<long>(grid.size());
  const double radius = 2.0 / static_cast<double>(spectrum.M);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double left = i == 0 ? grid[i].energy : grid[i - 1].energy;
    const double right = i + 1 == grid.size() ? grid[i].energy : grid[i + 1].energy;
    const double mass = 0.5 * (right - left);
    if (distance_to_set(spectrum.eigenvalues, grid[i].energy) > radius) continue;
    ++report.near_points;
    report.near_mass += mass;
    if (grid[i].mean < tau) report.low_mass += mass;
  }
  report.fraction = report.near_mass > 0 ? report.low_mass / report.near_mass : 0.0;
  return report;
}

std::vector<double> spectrum_grid(const SpectrumApprox& spectrum, long points) {
  if (points < 2) throw ArgumentError("an energy grid needs at least two points");
  if (spectrum.eigenvalues.empty()) throw ArgumentError("spectrum is empty");
  const double lo = spectrum.eigenvalues.front() - 0.1;
  const double hi = spectrum.eigenvalues.back() + 0.1;
  std::vector<double> out(static_cast<std::size_t>(points));
  for (long i = 0; i < points; ++i) {
    out[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return out;
}

}  // namespace iet
