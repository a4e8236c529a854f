#include "qglab/bent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qglab/errors.hpp"
#include "qglab/smooth.hpp"

namespace qglab {

double CurvatureProfile::base(double sigma) const {
  const double a = plateau;
  const double x = std::abs(sigma);
  if (x >= 1.0) return 0.0;
  const double height = 1.0 / (1.0 + a);
  if (x <= a) return height;
  return height * smoothstep((1.0 - x) / (1.0 - a));
}

double CurvatureProfile::base_d1(double sigma) const {
  const double a = plateau;
  const double x = std::abs(sigma);
  if (x >= 1.0 || x <= a) return 0.0;
  const double height = 1.0 / (1.0 + a);
  const double d = height * smoothstep_d1((1.0 - x) / (1.0 - a)) * (-1.0 / (1.0 - a));
  return sigma > 0.0 ? d : -d;
}

double CurvatureProfile::base_d2(double sigma) const {
  const double a = plateau;
  const double x = std::abs(sigma);
  if (x >= 1.0 || x <= a) return 0.0;
  const double height = 1.0 / (1.0 + a);
  return height * smoothstep_d2((1.0 - x) / (1.0 - a)) / ((1.0 - a) * (1.0 - a));
}

double CurvatureProfile::k(double s) const { return theta / delta * base(s / delta); }
double CurvatureProfile::k1(double s) const { return theta / (delta * delta) * base_d1(s / delta); }
double CurvatureProfile::k2(double s) const {
  return theta / (delta * delta * delta) * base_d2(s / delta);
}

CurvatureEval curvature_eval(const CurvatureProfile& p, double s) {
  return {p.k(s), p.k1(s), p.k2(s)};
}

Curve2D::Curve2D(const CurvatureProfile& p, int bend_samples) : profile_(p) {
  if (!(p.delta > 0.0)) throw std::invalid_argument("Curve2D: delta must be > 0");
  if (!(p.plateau > 0.0 && p.plateau < 1.0))
    throw std::invalid_argument("Curve2D: plateau must lie in (0, 1)");
  const double half = 0.5 * p.theta;
  in_dir_ = {std::cos(-half), std::sin(-half)};
  bend_start_ = Point2{0.0, 0.0} - p.delta * in_dir_;

  const int n = bend_samples;
  h_ = 2.0 * p.delta / n;
  angle_.resize(n + 1);
  pos_.resize(n + 1);
  angle_[0] = -half;
  pos_[0] = bend_start_;
  // RK4 on theta' = k(s), zeta' = (cos theta, sin theta).
  double s = -p.delta;
  for (int i = 0; i < n; ++i) {
    const double th = angle_[i];
    const double k1a = p.k(s);
    const Point2 k1p{std::cos(th), std::sin(th)};
    const double th2 = th + 0.5 * h_ * k1a;
    const double k2a = p.k(s + 0.5 * h_);
    const Point2 k2p{std::cos(th2), std::sin(th2)};
    const double th3 = th + 0.5 * h_ * k2a;
    const double k3a = k2a;  // k at the same midpoint
    const Point2 k3p{std::cos(th3), std::sin(th3)};
    const double th4 = th + h_ * k3a;
    const double k4a = p.k(s + h_);
    const Point2 k4p{std::cos(th4), std::sin(th4)};
    angle_[i + 1] = th + h_ / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
    pos_[i + 1] = pos_[i] + (h_ / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    s += h_;
  }
  const double out_angle = angle_[n];
  out_dir_ = {std::cos(out_angle), std::sin(out_angle)};
  bend_end_ = pos_[n];
}

double Curve2D::tangent_angle(double s) const {
  const double d = profile_.delta;
  if (s <= -d) return angle_.front();
  if (s >= d) return angle_.back();
  const double f = (s + d) / h_;
  const int i = std::min(static_cast<int>(f), static_cast<int>(angle_.size()) - 2);
  const double t = f - i;
  return angle_[i] * (1.0 - t) + angle_[i + 1] * t;
}

Point2 Curve2D::position(double s) const {
  const double d = profile_.delta;
  if (s <= -d) return bend_start_ + (s + d) * in_dir_;
  if (s >= d) return bend_end_ + (s - d) * out_dir_;
  const double f = (s + d) / h_;
  const int i = std::min(static_cast<int>(f), static_cast<int>(pos_.size()) - 2);
  const double t = f - i;
  return pos_[i] * (1.0 - t) + pos_[i + 1] * t;
}

Point2 Curve2D::tangent(double s) const {
  const double a = tangent_angle(s);
  return {std::cos(a), std::sin(a)};
}

Point2 Curve2D::normal(double s) const { return tangent(s).perp(); }

double Curve2D::turning_angle() const { return angle_.back() - angle_.front(); }

Curve2D::Nearest Curve2D::nearest(Point2 q) const {
  const double d = profile_.delta;
  Nearest best;
  best.dist = std::numeric_limits<double>::infinity();

  auto consider_ray = [&](Point2 base, Point2 dir, double s_base, double sign,
                          Point2 curve_tangent) {
    // Ray parametrized as base + t*dir, t >= 0, arc length s_base + sign*t.
    double t = (q - base).dot(dir);
    t = std::max(t, 0.0);
    const Point2 p = base + t * dir;
    const double dist = (q - p).norm();
    if (dist < best.dist) {
      best.s = s_base + sign * t;
      best.u = (q - p).dot(curve_tangent.perp());
      best.dist = dist;
    }
  };
  // Incoming ray runs toward the bend start as s increases to -delta.
  consider_ray(bend_start_, Point2{0.0, 0.0} - in_dir_, -d, -1.0, in_dir_);
  consider_ray(bend_end_, out_dir_, d, 1.0, out_dir_);

  // Bend: coarse scan then local refinement.
  const int n = static_cast<int>(pos_.size()) - 1;
  const int stride = std::max(1, n / 256);
  int coarse = 0;
  double coarse_d2 = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; i += stride) {
    const Point2 r = q - pos_[i];
    const double d2 = r.dot(r);
    if (d2 < coarse_d2) {
      coarse_d2 = d2;
      coarse = i;
    }
  }
  const int lo = std::max(0, coarse - 2 * stride), hi = std::min(n - 1, coarse + 2 * stride);
  for (int i = lo; i <= hi; ++i) {
    // Project q on segment [pos_i, pos_{i+1}].
    const Point2 a = pos_[i], b = pos_[i + 1];
    const Point2 ab = b - a;
    double t = (q - a).dot(ab) / ab.dot(ab);
    t = std::clamp(t, 0.0, 1.0);
    const Point2 p = a + t * ab;
    const double dist = (q - p).norm();
    if (dist < best.dist) {
      const double s = -d + (i + t) * h_;
      best.s = s;
      best.u = (q - p).dot(normal(s));
      best.dist = dist;
    }
  }
  return best;
}

double jacobian(const CurvatureProfile& p, double s, double u) {
  const double uk = u * p.k(s);
  if (std::abs(uk) >= 1.0) throw numeric_error("jacobian: tubular coordinates degenerate (|u k| >= 1)");
  return 1.0 + uk;
}

double geometric_potential(const CurvatureProfile& p, double s, double u) {
  const auto [k, k1, k2] = curvature_eval(p, s);
  const double j = jacobian(p, s, u);
  const double j2 = j * j;
  return 0.5 * (-k * k / (4.0 * j2) + u * k2 / (2.0 * j2) - 1.25 * u * u * k1 * k1 / j2);
}

DeltaSchedule delta_schedule(double epsilon, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("delta_schedule: beta must be > 0");
  DeltaSchedule out;
  out.delta = std::pow(epsilon, beta);
  out.admissible_tail = beta < 0.5;
  out.admissible_full = beta < 0.1;
  return out;
}

}  // namespace qglab
