#include "qglab/evolution.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "qglab/errors.hpp"
#include "qglab/quadrature.hpp"

namespace qglab {

using namespace std::complex_literals;

namespace {

std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

// RAII wrapper for the in-place 2D transforms on a field buffer.
class SpectralWorkspace {
 public:
  explicit SpectralWorkspace(Field2D& f) {
    auto* data = reinterpret_cast<fftw_complex*>(f.values.data());
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fwd_ = fftw_plan_dft_2d(f.grid.ny, f.grid.nx, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_2d(f.grid.ny, f.grid.nx, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~SpectralWorkspace() {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
  }
  SpectralWorkspace(const SpectralWorkspace&) = delete;
  SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

  void forward() { fftw_execute(fwd_); }
  void backward() { fftw_execute(bwd_); }

 private:
  fftw_plan fwd_;
  fftw_plan bwd_;
};

double wavenumber(int i, int n, double length) {
  const int k = (i <= n / 2) ? i : i - n;
  return 2.0 * M_PI * k / length;
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Constant-coefficient complex Thomas solve for (I + i theta A) x = r with
// A = -1/2 d^2 (Dirichlet), reused across all rows of one direction.
struct CayleyLine {
  cdouble diag, off;        // of I + i theta A
  cdouble rdiag, roff;      // of I - i theta A
  std::vector<cdouble> cp;  // forward-sweep upper coefficients
  std::vector<cdouble> inv_denom;

  CayleyLine(int n, double theta, double h) {
    const double ad = 1.0 / (h * h), ao = -0.5 / (h * h);
    diag = 1.0 + 1i * theta * ad;
    off = 1i * theta * ao;
    rdiag = 1.0 - 1i * theta * ad;
    roff = -1i * theta * ao;
    cp.resize(n);
    inv_denom.resize(n);
    cdouble prev{0.0, 0.0};
    for (int k = 0; k < n; ++k) {
      const cdouble denom = diag - off * prev;
      inv_denom[k] = 1.0 / denom;
      prev = off * inv_denom[k];
      cp[k] = prev;
    }
  }

  // In-place Cayley step on a strided line of length n.
  void apply(cdouble* x, int n, int stride, cdouble* scratch) const {
    // RHS = (I - i theta A) x.
    for (int k = 0; k < n; ++k) {
      cdouble r = rdiag * x[k * stride];
      if (k > 0) r += roff * x[(k - 1) * stride];
      if (k + 1 < n) r += roff * x[(k + 1) * stride];
      scratch[k] = r;
    }
    // Forward sweep.
    cdouble prev{0.0, 0.0};
    for (int k = 0; k < n; ++k) {
      scratch[k] = (scratch[k] - off * prev) * inv_denom[k];
      prev = scratch[k];
    }
    // Back substitution.
    x[(n - 1) * stride] = scratch[n - 1];
    for (int k = n - 2; k >= 0; --k) {
      scratch[k] -= cp[k] * scratch[k + 1];
      x[k * stride] = scratch[k];
    }
  }
};

}  // namespace

PropagationStats propagate(Field2D& psi, const EvolutionConfig& cfg,
                           const DistanceGrid& dist, const Observer& observer) {
  const Grid2D& g = psi.grid;
  if (dist.grid.nx != g.nx || dist.grid.ny != g.ny)
    throw std::invalid_argument("propagate: distance grid does not match field grid");
  if (!(cfg.dt > 0.0) || !(cfg.T > 0.0)) throw std::invalid_argument("propagate: dt, T must be > 0");
  if (cfg.dt > 0.5 * cfg.epsilon)
    throw std::invalid_argument("propagate: dt exceeds transverse accuracy bound dt <= eps/2");
  const double steps_real = cfg.T / cfg.dt;
  const int steps = static_cast<int>(std::llround(steps_real));
  if (std::abs(steps_real - steps) > 1e-6)
    throw std::invalid_argument("propagate: T must be an integer multiple of dt");
  if (cfg.stepper == Stepper::SpectralSplit && (!power_of_two(g.nx) || !power_of_two(g.ny)))
    throw std::invalid_argument("propagate: spectral stepper needs power-of-two grid");

  const double norm0 = psi.norm();
  const double eshift = mode_energy(cfg.band, cfg.epsilon);
  const double inv2e2 = 0.5 / (cfg.epsilon * cfg.epsilon);

  // Half-step potential phase including the subtracted band energy.
  std::vector<cdouble> half_phase(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double v = inv2e2 * dist.d[k] * dist.d[k] - eshift;
    half_phase[k] = std::exp(-0.5i * cfg.dt * v);
  }

  auto check_norm = [&](double t) {
    const double drift = std::abs(psi.norm() - norm0);
    if (drift > 1e-4) {
      std::ostringstream msg;
      msg << "propagate: instability detected at t=" << t << " (norm drift " << drift << ")";
      throw numeric_error(msg.str());
    }
    return drift;
  };

  if (observer) observer(0.0, psi);

  double drift = 0.0;
  if (cfg.stepper == Stepper::SpectralSplit) {
    SpectralWorkspace fft(psi);
    // Kinetic phase with the inverse-transform normalization folded in.
    std::vector<cdouble> kin_phase(g.size());
    const double scale = 1.0 / static_cast<double>(g.size());
    for (int j = 0; j < g.ny; ++j) {
      const double ky = wavenumber(j, g.ny, g.y1 - g.y0);
      for (int i = 0; i < g.nx; ++i) {
        const double kx = wavenumber(i, g.nx, g.x1 - g.x0);
        kin_phase[g.idx(i, j)] = std::exp(-0.5i * cfg.dt * (kx * kx + ky * ky)) * scale;
      }
    }
    for (int s = 0; s < steps; ++s) {
      for (std::size_t k = 0; k < g.size(); ++k) psi.values[k] *= half_phase[k];
      fft.forward();
      for (std::size_t k = 0; k < g.size(); ++k) psi.values[k] *= kin_phase[k];
      fft.backward();
      for (std::size_t k = 0; k < g.size(); ++k) psi.values[k] *= half_phase[k];
      const double t = (s + 1) * cfg.dt;
      const bool report = (cfg.observer_stride > 0 && (s + 1) % cfg.observer_stride == 0);
      if (report || s + 1 == steps) {
        drift = std::max(drift, check_norm(t));
        if (observer && (report || s + 1 == steps)) observer(t, psi);
      }
    }
  } else {
    CayleyLine line_x(g.nx, 0.5 * cfg.dt, g.dx());
    CayleyLine line_y(g.ny, 0.5 * cfg.dt, g.dy());
    std::vector<cdouble> scratch(std::max(g.nx, g.ny));
    for (int s = 0; s < steps; ++s) {
      for (std::size_t k = 0; k < g.size(); ++k) psi.values[k] *= half_phase[k];
      for (int j = 0; j < g.ny; ++j)
        line_x.apply(&psi.values[g.idx(0, j)], g.nx, 1, scratch.data());
      for (int i = 0; i < g.nx; ++i)
        line_y.apply(&psi.values[g.idx(i, 0)], g.ny, g.nx, scratch.data());
      for (std::size_t k = 0; k < g.size(); ++k) psi.values[k] *= half_phase[k];
      const double t = (s + 1) * cfg.dt;
      const bool report = (cfg.observer_stride > 0 && (s + 1) % cfg.observer_stride == 0);
      if (report || s + 1 == steps) {
        drift = std::max(drift, check_norm(t));
        if (observer && (report || s + 1 == steps)) observer(t, psi);
      }
    }
  }
  return PropagationStats{drift, steps};
}

Field2D prepare_initial(const Profile& f, int edge, int band, double epsilon,
                        const Grid2D& grid, const MetricGraph& g) {
  const Edge& e = g.edges().at(edge);
  const double margin = 6.0 * std::sqrt(epsilon);
  if (f.support_lo() <= margin)
    throw std::invalid_argument("prepare_initial: profile support too close to the start vertex");
  if (e.finite() && f.support_hi() >= e.length - margin)
    throw std::invalid_argument("prepare_initial: profile support too close to the end vertex");
  if (std::min(grid.dx(), grid.dy()) > std::sqrt(epsilon) / 10.0)
    throw std::invalid_argument("prepare_initial: grid cannot resolve the transverse mode");

  const EdgeFrame frame = g.frame(edge);
  const HermiteMode mode{band, epsilon};
  Field2D psi(grid);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const auto [x, y] = frame.to_local({grid.x(i), grid.y(j)});
      psi.at(i, j) = f(x) * mode(y);
    }
  return psi;
}

double EdgeTrace::l2_norm() const {
  if (xs.size() < 2) return 0.0;
  const double h = xs[1] - xs[0];
  double acc = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double w = (k == 0 || k + 1 == values.size()) ? 0.5 : 1.0;
    acc += w * std::norm(values[k]);
  }
  return std::sqrt(acc * h);
}

namespace {

bool axis_aligned(Point2 t) {
  return (std::abs(std::abs(t.x) - 1.0) < 1e-14 && std::abs(t.y) < 1e-14) ||
         (std::abs(std::abs(t.y) - 1.0) < 1e-14 && std::abs(t.x) < 1e-14);
}

}  // namespace

EdgeTrace project_subband(const Field2D& psi, const MetricGraph& g, int edge,
                          int band, double epsilon, const std::vector<double>& xs) {
  const EdgeFrame frame = g.frame(edge);
  const Grid2D& grid = psi.grid;
  const HermiteMode mode{band, epsilon};
  const double radius = mode_support_radius(band, epsilon);

  EdgeTrace trace;
  trace.edge = edge;
  trace.band = band;
  trace.xs = xs;
  trace.values.resize(xs.size());

  if (axis_aligned(frame.tangent)) {
    // Normal lines coincide with grid columns/rows: integrate directly with
    // the trapezoid rule over grid nodes (superalgebraic for the decaying
    // smooth integrand).
    std::size_t clipped = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      cdouble acc{0.0, 0.0};
      bool ok = true;
      if (std::abs(frame.tangent.y) < 0.5) {
        const double gx = frame.origin.x + frame.tangent.x * xs[k];
        const double fi = (gx - grid.x0) / grid.dx();
        const int i = static_cast<int>(std::llround(fi));
        if (std::abs(fi - i) > 1e-9 || i < 0 || i >= grid.nx) {
          ok = false;
        } else {
          for (int j = 0; j < grid.ny; ++j) {
            const double y = (Point2{grid.x(i), grid.y(j)} - frame.origin).dot(frame.normal);
            if (std::abs(y) > radius) continue;
            acc += mode(y) * psi.at(i, j);
          }
          acc *= grid.dy();
        }
      } else {
        const double gy = frame.origin.y + frame.tangent.y * xs[k];
        const double fj = (gy - grid.y0) / grid.dy();
        const int j = static_cast<int>(std::llround(fj));
        if (std::abs(fj - j) > 1e-9 || j < 0 || j >= grid.ny) {
          ok = false;
        } else {
          for (int i = 0; i < grid.nx; ++i) {
            const double y = (Point2{grid.x(i), grid.y(j)} - frame.origin).dot(frame.normal);
            if (std::abs(y) > radius) continue;
            acc += mode(y) * psi.at(i, j);
          }
          acc *= grid.dx();
        }
      }
      if (!ok) ++clipped;
      trace.values[k] = acc;
    }
    trace.clipped_fraction = xs.empty() ? 0.0 : double(clipped) / xs.size();
    return trace;
  }

  // Oblique edge: Gauss-Legendre along the normal line, quintic interpolation.
  const QuadRule q = gauss_legendre_panels(-radius, radius, 6, 12);
  std::size_t total = 0, clipped = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    cdouble acc{0.0, 0.0};
    for (std::size_t m = 0; m < q.size(); ++m) {
      bool clip = false;
      const cdouble v = sample_field(psi, frame.from_local(xs[k], q.x[m]), 5, &clip);
      ++total;
      if (clip) ++clipped;
      acc += q.w[m] * mode(q.x[m]) * v;
    }
    trace.values[k] = acc;
  }
  trace.clipped_fraction = total ? double(clipped) / total : 0.0;
  return trace;
}

EdgeTrace project_subband(const Field2D& psi, const MetricGraph& g, int edge,
                          int band, double epsilon) {
  const EdgeFrame frame = g.frame(edge);
  const Grid2D& grid = psi.grid;
  const double radius = mode_support_radius(band, epsilon);
  const Edge& e = g.edges().at(edge);

  // Longest edge-parameter range whose normal segments stay inside the grid
  // (with an interpolation-stencil margin).
  const double mx = 3.5 * grid.dx(), my = 3.5 * grid.dy();
  auto inside = [&](Point2 p) {
    return p.x >= grid.x0 + mx && p.x <= grid.x1 - mx && p.y >= grid.y0 + my &&
           p.y <= grid.y1 - my;
  };
  const double h = std::min(grid.dx(), grid.dy());
  std::vector<double> xs;
  const double xmax = std::min(e.length, 2.0 * std::max(grid.x1 - grid.x0, grid.y1 - grid.y0));
  for (double x = 0.0; x <= xmax; x += h) {
    if (inside(frame.from_local(x, radius)) && inside(frame.from_local(x, -radius)))
      xs.push_back(x);
  }
  if (xs.empty()) throw std::invalid_argument("project_subband: no sampling line fits the grid");
  return project_subband(psi, g, edge, band, epsilon, xs);
}

cdouble weak_pairing(const EdgeTrace& trace, const std::function<double(double)>& chi,
                     double chi_lo, double chi_hi) {
  if (trace.xs.empty()) throw std::invalid_argument("weak_pairing: empty trace");
  if (chi_lo < trace.xs.front() || chi_hi > trace.xs.back())
    throw std::invalid_argument("weak_pairing: chi support outside edge parameter range");
  const double h = trace.xs.size() > 1 ? trace.xs[1] - trace.xs[0] : 0.0;
  cdouble acc{0.0, 0.0};
  for (std::size_t k = 0; k < trace.xs.size(); ++k) {
    const double w = (k == 0 || k + 1 == trace.xs.size()) ? 0.5 : 1.0;
    acc += w * chi(trace.xs[k]) * trace.values[k];
  }
  return acc * h;
}

double tail_mass(const Field2D& psi, const DistanceGrid& dist, double delta0) {
  const Grid2D& g = psi.grid;
  if (delta0 <= 3.0 * std::max(g.dx(), g.dy()))
    throw std::invalid_argument("tail_mass: delta0 must exceed 3 grid spacings");
  double acc = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (dist.d[k] >= delta0) acc += std::norm(psi.values[k]);
  return std::sqrt(acc * g.cell());
}

EnergySplit energy_components(const Field2D& psi, const DistanceGrid& dist, double epsilon) {
  const Grid2D& g = psi.grid;
  EnergySplit split;
  const double inv2e2 = 0.5 / (epsilon * epsilon);
  for (std::size_t k = 0; k < g.size(); ++k)
    split.potential += dist.d[k] * dist.d[k] * std::norm(psi.values[k]);
  split.potential *= inv2e2 * g.cell();

  // Spectral derivatives.
  Field2D work = psi;
  {
    SpectralWorkspace fft(work);
    fft.forward();
    const double scale = 1.0 / static_cast<double>(g.size());
    double gx = 0.0, gy = 0.0;
    for (int j = 0; j < g.ny; ++j) {
      const double ky = wavenumber(j, g.ny, g.y1 - g.y0);
      for (int i = 0; i < g.nx; ++i) {
        const double kx = wavenumber(i, g.nx, g.x1 - g.x0);
        const double a = std::norm(work.values[g.idx(i, j)]) * scale * scale;
        gx += kx * kx * a;
        gy += ky * ky * a;
      }
    }
    // Parseval with the grid measure.
    split.grad_x = 0.5 * gx * g.cell() * g.size();
    split.grad_y = 0.5 * gy * g.cell() * g.size();
  }
  return split;
}

double coupling_residual(const Profile& f, int edge, int band, double epsilon,
                         const MetricGraph& g, const DistanceGrid& dist) {
  const EdgeFrame frame = g.frame(edge);
  const HermiteMode mode{band, epsilon};
  const Grid2D& grid = dist.grid;
  const double inv2e2 = 0.5 / (epsilon * epsilon);
  double acc = 0.0;
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const auto [x, y] = frame.to_local({grid.x(i), grid.y(j)});
      const double d = dist.at(i, j);
      const double w = inv2e2 * (d * d - y * y);
      if (w == 0.0) continue;
      acc += std::norm(w * f(x) * mode(y));
    }
  return std::sqrt(acc * grid.cell());
}

}  // namespace qglab
