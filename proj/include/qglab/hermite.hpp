#pragma once

#include <vector>

namespace qglab {

// Uniform 1D grid with n points covering [a, b] inclusive.
struct Grid1D {
  double a = 0.0;
  double b = 0.0;
  int n = 0;

  double h() const { return (b - a) / (n - 1); }
  double x(int i) const { return a + i * h(); }
};

inline constexpr int kMaxBand = 12;

// Normalized eigenfunction of the scaled transverse well
//   (-1/2 d^2/dy^2 + y^2/(2 eps^2)) Phi = ((n + 1/2)/eps) Phi,
// evaluated through the stable normalized Hermite-function recurrence.
struct HermiteMode {
  int n = 0;
  double epsilon = 1.0;

  double operator()(double y) const;
  double energy() const;
};

// Unit-scale Hermite function h_n (the epsilon = 1 mode).
double hermite_function(int n, double u);

double mode_energy(int n, double epsilon);

// Half-width of the transverse quadrature window: Gaussian tails of mode n
// are below 1e-14 outside |y| <= sqrt(eps) * (2 sqrt(2n+1) + 6).
double mode_support_radius(int n, double epsilon);

// L2 norm of (-1/2 d^2 + y^2/(2 eps^2) - E_n/eps) Phi_n^eps computed with
// second-order centered differences on `grid`. Throws if the grid violates
// the coverage (>= 8 std devs) or sampling (>= 16 points per oscillation)
// requirements.
double eigen_residual(const HermiteMode& mode, const Grid1D& grid);

// Grid on which eigen_residual lands below `target` for the given mode
// (second-order truncation estimate plus a safety factor).
Grid1D residual_grid(int n, double epsilon, double target);

}  // namespace qglab
