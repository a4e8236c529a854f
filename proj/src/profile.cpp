#include "qglab/profile.hpp"

#include <cmath>
#include <stdexcept>

#include "qglab/quadrature.hpp"
#include "qglab/smooth.hpp"

namespace qglab {

using namespace std::complex_literals;

std::complex<double> Profile::operator()(double x) const {
  const double xi = x - center;
  if (kind == Kind::Gaussian) {
    const double a = std::pow(M_PI * sigma * sigma, -0.25);
    return a * std::exp(-xi * xi / (2.0 * sigma * sigma)) * std::exp(1i * momentum * xi);
  }
  const double half = 0.5 * width;
  if (std::abs(xi) >= half) return 0.0;
  // Even bump from the mollifier step, positive on the open support.
  const double v = smoothstep((xi + half) / half) * smoothstep((half - xi) / half);
  return amplitude * v * std::exp(1i * momentum * xi);
}

double Profile::support_lo() const {
  return center - (kind == Kind::Gaussian ? 8.0 * sigma : 0.5 * width);
}

double Profile::support_hi() const {
  return center + (kind == Kind::Gaussian ? 8.0 * sigma : 0.5 * width);
}

std::complex<double> Profile::free_evolution(double x, double t) const {
  if (kind != Kind::Gaussian)
    throw std::invalid_argument("Profile::free_evolution: closed form only for gaussians");
  const double s2 = sigma * sigma;
  const std::complex<double> z = 1.0 + 1i * t / s2;
  const double xi = x - center;
  const std::complex<double> arg =
      -(xi - momentum * t) * (xi - momentum * t) / (2.0 * s2 * z) +
      1i * (momentum * xi - 0.5 * momentum * momentum * t);
  return std::pow(M_PI * s2, -0.25) / std::sqrt(z) * std::exp(arg);
}

Profile Profile::make_gaussian(double center, double sigma, double momentum) {
  if (!(sigma > 0.0)) throw std::invalid_argument("Profile: sigma must be > 0");
  Profile p;
  p.kind = Kind::Gaussian;
  p.center = center;
  p.sigma = sigma;
  p.momentum = momentum;
  return p;
}

Profile Profile::make_bump(double center, double width, double momentum) {
  if (!(width > 0.0)) throw std::invalid_argument("Profile: width must be > 0");
  Profile p;
  p.kind = Kind::Bump;
  p.center = center;
  p.width = width;
  p.momentum = momentum;
  // Normalize to unit L2 norm.
  QuadRule q = gauss_legendre_panels(center - 0.5 * width, center + 0.5 * width, 8, 16);
  double acc = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) acc += q.w[i] * std::norm(p(q.x[i]));
  p.amplitude = 1.0 / std::sqrt(acc);
  return p;
}

}  // namespace qglab
