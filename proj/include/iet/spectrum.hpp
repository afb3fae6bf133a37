#pragma once

// Finite-volume spectra of H = Delta + V with Dirichlet boundary conditions,
// and the Lyapunov-based indicator for absolutely continuous spectrum.

#include "iet/cocycle.hpp"

#include <string>
#include <vector>

namespace iet {

struct SpectrumApprox {
  long M = 0;
  double w = 0.0;
  /// Sorted; strictly increasing unless two eigenvalues agree to rounding.
  std::vector<double> eigenvalues;
};

/// Number of eigenvalues < x of the tridiagonal matrix with the given
/// diagonal and unit off-diagonal.
long sturm_count(const std::vector<double>& diagonal, double x);

/// All eigenvalues of the tridiagonal matrix by Sturm bisection; each is
/// located to within `tol`.
std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diagonal, double tol = 1e-10);

/// Eigenvalues of H restricted to sites 0..M-1. `w` is recorded as the base
/// point of the potential.
SpectrumApprox truncated_spectrum(const Potential& v, long M, double w = 0.0);

/// Hausdorff distance between the two eigenvalue sets.
double spectrum_hausdorff(const SpectrumApprox& a, const SpectrumApprox& b);

inline constexpr const char* kEvidenceNote =
    "numerical evidence only: finite n and finite M cannot certify the absence or presence of "
    "absolutely continuous spectrum";

struct ACReport {
  double tau = 0.0;
  long M = 0;
  long n = 0;
  long grid_points = 0;
  /// Grid points within 2/M of an eigenvalue, and their total grid mass.
  long near_points = 0;
  double near_mass = 0.0;
  /// Mass of those near points whose Lyapunov mean is below tau.
  double low_mass = 0.0;
  /// low_mass / near_mass.
  double fraction = 0.0;
  std::string note = kEvidenceNote;
};

/// Fraction of the grid mass near the truncated spectrum where the Lyapunov
/// estimate is below tau. Grid mass of a point is half the distance between
/// its neighbours. The grid must cover [min eigenvalue - 0.1, max + 0.1].
ACReport ac_indicator(const std::vector<LyapunovEstimate>& estimates, const SpectrumApprox& spectrum,
                      double tau = 0.01);

/// Evenly spaced energies covering the spectrum with a 0.1 margin.
std::vector<double> spectrum_grid(const SpectrumApprox& spectrum, long points);

}  // namespace iet
