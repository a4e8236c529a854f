#pragma once

#include <vector>

#include "qglab/geometry.hpp"

namespace qglab {

// Curvature family k_delta(s) = (theta/delta) k(s/delta) built from a smooth
// plateau bump k with supp k = (-1, 1), plateau height 1/(1+a) on |s| <= a,
// and integral 1. The resulting curve turns by `theta` inside |s| < delta.
struct CurvatureProfile {
  double theta = M_PI / 2;  // turning angle, [0, pi)
  double delta = 0.4;       // bend half-width
  double plateau = 0.82;    // base bump plateau half-width a, in (0, 1)

  // Base bump and derivatives at sigma = s/delta.
  double base(double sigma) const;
  double base_d1(double sigma) const;
  double base_d2(double sigma) const;

  double k(double s) const;
  double k1(double s) const;
  double k2(double s) const;

  double max_k() const { return theta / ((1.0 + plateau) * delta); }
};

struct CurvatureEval {
  double k, k1, k2;
};

CurvatureEval curvature_eval(const CurvatureProfile& p, double s);

// Unit-speed curve reconstructed from its curvature: straight rays outside
// |s| > delta, RK4 integration of (theta' = k, zeta' = (cos theta, sin theta))
// through the bend. The incoming ray points along angle -theta/2 and aims at
// the origin, so the curve converges to the V-graph with opening pi - theta
// as delta -> 0.
class Curve2D {
 public:
  explicit Curve2D(const CurvatureProfile& p, int bend_samples = 16384);

  Point2 position(double s) const;
  double tangent_angle(double s) const;
  Point2 tangent(double s) const;
  Point2 normal(double s) const;  // left normal

  // Angle swept between the asymptotic directions.
  double turning_angle() const;

  struct Nearest {
    double s = 0.0;     // arc-length of the closest point
    double u = 0.0;     // signed offset along the left normal
    double dist = 0.0;  // |u|
  };
  Nearest nearest(Point2 q) const;
  double distance(Point2 q) const { return nearest(q).dist; }

  const CurvatureProfile& profile() const { return profile_; }

 private:
  CurvatureProfile profile_;
  double h_ = 0.0;  // bend sample spacing
  std::vector<double> angle_;
  std::vector<Point2> pos_;
  Point2 in_dir_, out_dir_;
  Point2 bend_start_, bend_end_;
};

// Tubular-coordinate Jacobian 1 + u k_delta(s). Throws numeric_error when
// the coordinates degenerate (|u k| >= 1).
double jacobian(const CurvatureProfile& p, double s, double u);

// Curvature-induced potential of the flat-measure tube Hamiltonian.
double geometric_potential(const CurvatureProfile& p, double s, double u);

struct DeltaSchedule {
  double delta = 0.0;
  bool admissible_tail = false;  // eps^(1/2)/delta -> 0
  bool admissible_full = false;  // eps^(1/10)/delta -> 0
};

// delta = eps^beta with the two admissibility flags.
DeltaSchedule delta_schedule(double epsilon, double beta);

}  // namespace qglab
