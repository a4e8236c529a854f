#include "qglab/smooth.hpp"

#include <cmath>
#include <stdexcept>

namespace qglab {

namespace {

double moll(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
double moll_d1(double x) { return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0; }
double moll_d2(double x) {
  if (x <= 0.0) return 0.0;
  return std::exp(-1.0 / x) * (1.0 / (x * x * x * x) - 2.0 / (x * x * x));
}

}  // namespace

double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double f = moll(x), g = moll(1.0 - x);
  return f / (f + g);
}

double smoothstep_d1(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double f = moll(x), g = moll(1.0 - x);
  const double fp = moll_d1(x), gp = -moll_d1(1.0 - x);
  const double d = f + g;
  return (fp * g - f * gp) / (d * d);
}

double smoothstep_d2(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double f = moll(x), g = moll(1.0 - x);
  const double fp = moll_d1(x), gp = -moll_d1(1.0 - x);
  const double fpp = moll_d2(x), gpp = moll_d2(1.0 - x);
  const double d = f + g;
  const double n = fp * g - f * gp;
  // (N/D^2)' with N' = f''g - f g''.
  return ((fpp * g - f * gpp) * d - 2.0 * n * (fp + gp)) / (d * d * d);
}

std::function<double(double)> cutoff_factory(double a, double b, CutoffKind kind) {
  if (!(a < b)) throw std::invalid_argument("cutoff_factory: need a < b");
  const double w = (kind == CutoffKind::Plateau) ? 0.25 * (b - a) : 0.5 * (b - a);
  return [a, b, w](double x) {
    return smoothstep((x - a) / w) * smoothstep((b - x) / w);
  };
}

}  // namespace qglab
