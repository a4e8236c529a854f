#include "qglab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qglab {

RateFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 3)
    throw std::invalid_argument("fit: need at least 3 points");
  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit: degenerate abscissae");
  RateFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (f.intercept + f.slope * xs[i]);
    ss_res += e * e;
  }
  f.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return f;
}

RateFit fit_rate(const std::vector<double>& xs, const std::vector<double>& ys) {
  std::vector<double> lx(xs.size()), ly(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
      throw std::invalid_argument("fit_rate: data must be strictly positive");
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  return fit_linear(lx, ly);
}

std::string fnv1a_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::vector<double> SweepResult::series(const std::string& observable) const {
  std::vector<double> out;
  for (const SweepRow& r : rows)
    if (r.observable == observable) out.push_back(r.value);
  return out;
}

std::vector<double> SweepResult::params(const std::string& observable) const {
  std::vector<double> out;
  for (const SweepRow& r : rows)
    if (r.observable == observable) out.push_back(r.param_value);
  return out;
}

std::vector<CheckOutcome> evaluate_checks(const ExperimentConfig& cfg, const SweepResult& result) {
  std::vector<CheckOutcome> outcomes;
  for (const CheckSpec& c : cfg.checks) {
    CheckOutcome o;
    const std::vector<double> ys = result.series(c.observable);
    const std::vector<double> xs = result.params(c.observable);
    if (c.type == "slope-range" || c.type == "slope-at-least") {
      bool ok = false;
      double slope = 0.0, r2 = 0.0;
      try {
        const RateFit f = fit_rate(xs, ys);
        slope = f.slope;
        r2 = f.r2;
        ok = (c.type == "slope-range") ? (slope >= c.lo && slope <= c.hi) : (slope >= c.lo);
        if (c.min_r2 > 0.0) ok = ok && r2 >= c.min_r2;
      } catch (const std::exception&) {
        ok = false;
      }
      char buf[256];
      std::snprintf(buf, sizeof(buf), "%s %s: slope=%.3f r2=%.4f", c.observable.c_str(),
                    c.type.c_str(), slope, r2);
      o.description = buf;
      o.passed = ok;
    } else if (c.type == "monotone-decreasing") {
      // Along the sweep order (parameters strictly decreasing).
      bool ok = ys.size() >= 2;
      for (std::size_t i = 1; i < ys.size(); ++i) ok = ok && ys[i] < ys[i - 1];
      o.description = c.observable + " monotone-decreasing";
      o.passed = ok;
    } else if (c.type == "max-below") {
      bool ok = !ys.empty();
      for (double v : ys) ok = ok && v < c.threshold;
      char buf[256];
      std::snprintf(buf, sizeof(buf), "%s max-below %.3g", c.observable.c_str(), c.threshold);
      o.description = buf;
      o.passed = ok;
    } else {
      o.description = "unknown check type: " + c.type;
      o.passed = false;
    }
    outcomes.push_back(o);
  }
  return outcomes;
}

}  // namespace qglab
