#include "qglab/hermite.hpp"

#include <cmath>
#include <stdexcept>

namespace qglab {

double hermite_function(int n, double u) {
  if (n < 0 || n > kMaxBand) throw std::invalid_argument("hermite_function: band out of range");
  const double h0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * u * u);
  if (n == 0) return h0;
  double hm = h0;
  double hn = std::sqrt(2.0) * u * h0;
  for (int k = 1; k < n; ++k) {
    const double hp = std::sqrt(2.0 / (k + 1.0)) * u * hn - std::sqrt(k / (k + 1.0)) * hm;
    hm = hn;
    hn = hp;
  }
  return hn;
}

double HermiteMode::operator()(double y) const {
  const double se = std::sqrt(epsilon);
  return hermite_function(n, y / se) / std::sqrt(se);
}

double HermiteMode::energy() const { return mode_energy(n, epsilon); }

double mode_energy(int n, double epsilon) {
  if (n < 0) throw std::invalid_argument("mode_energy: n must be >= 0");
  if (!(epsilon > 0.0)) throw std::invalid_argument("mode_energy: epsilon must be > 0");
  return (n + 0.5) / epsilon;
}

double mode_support_radius(int n, double epsilon) {
  return std::sqrt(epsilon) * (2.0 * std::sqrt(2.0 * n + 1.0) + 6.0);
}

double eigen_residual(const HermiteMode& mode, const Grid1D& grid) {
  if (grid.n < 8) throw std::invalid_argument("eigen_residual: grid too coarse");
  const double sigma = std::sqrt(mode.epsilon * (mode.n + 0.5));
  if (grid.b - grid.a < 8.0 * sigma)
    throw std::invalid_argument("eigen_residual: grid does not cover 8 standard deviations");
  // Local wavenumber at the center is sqrt(2n+1)/sqrt(eps); require >= 16
  // points per oscillation.
  const double kmax = std::sqrt(2.0 * mode.n + 1.0) / std::sqrt(mode.epsilon);
  if (2.0 * M_PI / (kmax * grid.h()) < 16.0)
    throw std::invalid_argument("eigen_residual: fewer than 16 points per oscillation");

  const double h = grid.h();
  const double e = mode.energy();
  const double inv2e2 = 0.5 / (mode.epsilon * mode.epsilon);
  std::vector<double> phi(grid.n);
  for (int i = 0; i < grid.n; ++i) phi[i] = mode(grid.x(i));
  double acc = 0.0;
  for (int i = 1; i + 1 < grid.n; ++i) {
    const double lap = (phi[i + 1] - 2.0 * phi[i] + phi[i - 1]) / (h * h);
    const double y = grid.x(i);
    const double r = -0.5 * lap + (inv2e2 * y * y - e) * phi[i];
    acc += r * r;
  }
  return std::sqrt(acc * h);
}

Grid1D residual_grid(int n, double epsilon, double target) {
  // Second-order truncation: residual ~ (h_u^2 / 24) * ||phi''''|| / eps in
  // the scaled variable u = y/sqrt(eps), with ||phi_n''''|| estimated from
  // the (u^2 - 2E)^2 envelope.
  const double phi4 = 0.6 * (2.0 * n + 1.0) * (2.0 * n + 1.0) + 4.0 * (n + 0.5) + 2.0;
  double hu = std::sqrt(24.0 * target * epsilon / phi4) * 0.5;
  const double sigma_u = std::sqrt(n + 0.5);
  const double span_u = 2.0 * std::max(2.0 * std::sqrt(2.0 * n + 1.0) + 6.0, 4.5 * sigma_u);
  int pts = static_cast<int>(span_u / hu) + 2;
  const double se = std::sqrt(epsilon);
  return Grid1D{-0.5 * span_u * se, 0.5 * span_u * se, pts};
}

}  // namespace qglab
