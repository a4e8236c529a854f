#include "qglab/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace qglab {

QuadRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  QuadRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  // Newton iteration on Legendre polynomials, symmetric pairs.
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.x[i] = -x;
    rule.x[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.w[i] = w;
    rule.w[n - 1 - i] = w;
  }
  return rule;
}

QuadRule gauss_legendre(int n, double a, double b) {
  QuadRule base = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    base.x[i] = mid + half * base.x[i];
    base.w[i] *= half;
  }
  return base;
}

QuadRule gauss_legendre_panels(double a, double b, int panels, int nodes_per_panel) {
  if (panels < 1) throw std::invalid_argument("gauss_legendre_panels: panels must be >= 1");
  QuadRule out;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    QuadRule r = gauss_legendre(nodes_per_panel, a + p * h, a + (p + 1) * h);
    out.x.insert(out.x.end(), r.x.begin(), r.x.end());
    out.w.insert(out.w.end(), r.w.begin(), r.w.end());
  }
  return out;
}

}  // namespace qglab
