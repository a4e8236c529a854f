#pragma once

#include <complex>
#include <string>

namespace qglab {

// Longitudinal wavepacket profile f, optionally carrying a momentum kick
// exp(i k0 (x - center)). Gaussian profiles are L2-normalized; bump profiles
// are compactly supported on [center - width/2, center + width/2] and
// normalized numerically.
struct Profile {
  enum class Kind { Gaussian, Bump };

  Kind kind = Kind::Gaussian;
  double center = 0.0;
  double sigma = 0.3;      // gaussian
  double width = 0.5;      // bump support width
  double momentum = 0.0;   // k0
  double amplitude = 1.0;  // bump normalization, set by make_bump

  std::complex<double> operator()(double x) const;

  // Effective support [lo, hi]: exact for bumps, +-8 sigma for gaussians.
  double support_lo() const;
  double support_hi() const;

  // Closed-form free evolution exp(-i t p^2/2) f for Gaussian profiles.
  std::complex<double> free_evolution(double x, double t) const;

  static Profile make_gaussian(double center, double sigma, double momentum = 0.0);
  static Profile make_bump(double center, double width, double momentum = 0.0);
};

}  // namespace qglab
