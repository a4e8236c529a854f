#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "qglab/geometry.hpp"

namespace qglab {

using cdouble = std::complex<double>;

// Rectangular grid of nx * ny nodes on [x0,x1] x [y0,y1]. Node (i,j) sits at
// (x0 + i*dx, y0 + j*dy); the last row/column lies one spacing inside x1/y1
// so that the grid is periodic-compatible for the spectral stepper.
struct Grid2D {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
  int nx = 0, ny = 0;

  double dx() const { return (x1 - x0) / nx; }
  double dy() const { return (y1 - y0) / ny; }
  double x(int i) const { return x0 + i * dx(); }
  double y(int j) const { return y0 + j * dy(); }
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  double cell() const { return dx() * dy(); }

  static Grid2D square(double half_extent, int n) {
    return Grid2D{-half_extent, half_extent, -half_extent, half_extent, n, n};
  }
};

// Complex wavefunction samples on a Grid2D.
struct Field2D {
  Grid2D grid;
  std::vector<cdouble> values;

  explicit Field2D(const Grid2D& g) : grid(g), values(g.size(), cdouble{0.0, 0.0}) {}

  cdouble& at(int i, int j) { return values[grid.idx(i, j)]; }
  cdouble at(int i, int j) const { return values[grid.idx(i, j)]; }

  double norm() const;
  cdouble inner(const Field2D& other) const;  // <this, other>, conjugate-linear in this
};

// Tensor-product local Lagrange interpolation of the field at an arbitrary
// point. order = 3 (4-point cubic) or 5 (6-point quintic). Points whose
// stencil leaves the grid return 0 and set *clipped if given.
cdouble sample_field(const Field2D& f, Point2 q, int order, bool* clipped = nullptr);

// Grid-sampled distance field plus the epsilon-independent squared-distance
// samples used to build the confining potential.
struct DistanceGrid {
  Grid2D grid;
  std::vector<double> d;

  DistanceGrid(const Grid2D& g, const std::function<double(Point2)>& dist);
  double at(int i, int j) const { return d[grid.idx(i, j)]; }
};

}  // namespace qglab
