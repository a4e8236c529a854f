#pragma once

#include <cstddef>
#include <vector>

namespace qglab {

// Quadrature rule: nodes x_i with weights w_i.
struct QuadRule {
  std::vector<double> x;
  std::vector<double> w;

  std::size_t size() const { return x.size(); }
};

// Gauss-Legendre rule with n nodes on [-1, 1].
QuadRule gauss_legendre(int n);

// Gauss-Legendre rule with n nodes mapped to [a, b].
QuadRule gauss_legendre(int n, double a, double b);

// Composite rule: `panels` equal Gauss-Legendre panels of `nodes_per_panel`
// nodes each over [a, b].
QuadRule gauss_legendre_panels(double a, double b, int panels, int nodes_per_panel);

}  // namespace qglab
