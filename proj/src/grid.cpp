#include "qglab/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace qglab {

double Field2D::norm() const {
  double acc = 0.0;
  for (const cdouble& v : values) acc += std::norm(v);
  return std::sqrt(acc * grid.cell());
}

cdouble Field2D::inner(const Field2D& other) const {
  if (values.size() != other.values.size()) throw std::invalid_argument("Field2D::inner: grid mismatch");
  cdouble acc{0.0, 0.0};
  for (std::size_t k = 0; k < values.size(); ++k) acc += std::conj(values[k]) * other.values[k];
  return acc * grid.cell();
}

namespace {

// Lagrange weights for `m` consecutive nodes at integer offsets, evaluated
// at fractional position t measured from the first stencil node.
inline void lagrange_weights(double t, int m, double* w) {
  for (int i = 0; i < m; ++i) {
    double num = 1.0, den = 1.0;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      num *= (t - j);
      den *= double(i - j);
    }
    w[i] = num / den;
  }
}

}  // namespace

cdouble sample_field(const Field2D& f, Point2 q, int order, bool* clipped) {
  const Grid2D& g = f.grid;
  const int m = (order == 5) ? 6 : 4;
  const double fx = (q.x - g.x0) / g.dx();
  const double fy = (q.y - g.y0) / g.dy();
  // First stencil node so that q lies between nodes m/2-1 and m/2.
  const int i0 = static_cast<int>(std::floor(fx)) - (m / 2 - 1);
  const int j0 = static_cast<int>(std::floor(fy)) - (m / 2 - 1);
  if (i0 < 0 || j0 < 0 || i0 + m > g.nx || j0 + m > g.ny) {
    if (clipped) *clipped = true;
    return {0.0, 0.0};
  }
  double wx[6], wy[6];
  lagrange_weights(fx - i0, m, wx);
  lagrange_weights(fy - j0, m, wy);
  cdouble acc{0.0, 0.0};
  for (int j = 0; j < m; ++j) {
    cdouble row{0.0, 0.0};
    const cdouble* base = &f.values[g.idx(i0, j0 + j)];
    for (int i = 0; i < m; ++i) row += wx[i] * base[i];
    acc += wy[j] * row;
  }
  return acc;
}

DistanceGrid::DistanceGrid(const Grid2D& g, const std::function<double(Point2)>& dist)
    : grid(g), d(g.size()) {
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) d[g.idx(i, j)] = dist({g.x(i), g.y(j)});
}

}  // namespace qglab
