#include "qglab/line1d.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "qglab/errors.hpp"

namespace qglab {

using namespace std::complex_literals;

namespace {

std::mutex& fftw_mutex_1d() {
  static std::mutex m;
  return m;
}

class Fft1D {
 public:
  explicit Fft1D(std::vector<cdouble>& buf) : n_(static_cast<int>(buf.size())) {
    auto* d = reinterpret_cast<fftw_complex*>(buf.data());
    std::lock_guard<std::mutex> lock(fftw_mutex_1d());
    fwd_ = fftw_plan_dft_1d(n_, d, d, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(n_, d, d, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Fft1D() {
    std::lock_guard<std::mutex> lock(fftw_mutex_1d());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
  }
  void forward() { fftw_execute(fwd_); }
  void backward() { fftw_execute(bwd_); }

 private:
  int n_;
  fftw_plan fwd_, bwd_;
};

double wavenumber_1d(int i, int n, double period) {
  const int k = (i <= n / 2) ? i : i - n;
  return 2.0 * M_PI * k / period;
}

}  // namespace

void line_propagate(std::vector<cdouble>& psi, const Line1D& grid,
                    const std::vector<double>& potential, double dt, double T,
                    LineStepper stepper,
                    const std::function<void(double, const std::vector<cdouble>&)>& observer) {
  const int n = grid.ns;
  if (static_cast<int>(psi.size()) != n || static_cast<int>(potential.size()) != n)
    throw std::invalid_argument("line_propagate: size mismatch");
  const double steps_real = T / dt;
  const int steps = static_cast<int>(std::llround(steps_real));
  if (std::abs(steps_real - steps) > 1e-6)
    throw std::invalid_argument("line_propagate: T must be an integer multiple of dt");

  std::vector<cdouble> half_phase(n);
  for (int i = 0; i < n; ++i) half_phase[i] = std::exp(-0.5i * dt * potential[i]);

  if (observer) observer(0.0, psi);
  if (stepper == LineStepper::Spectral) {
    const double period = grid.s1 - grid.s0 + grid.h();
    Fft1D fft(psi);
    std::vector<cdouble> kin(n);
    for (int i = 0; i < n; ++i) {
      const double k = wavenumber_1d(i, n, period);
      kin[i] = std::exp(-0.5i * dt * k * k) / static_cast<double>(n);
    }
    for (int s = 0; s < steps; ++s) {
      for (int i = 0; i < n; ++i) psi[i] *= half_phase[i];
      fft.forward();
      for (int i = 0; i < n; ++i) psi[i] *= kin[i];
      fft.backward();
      for (int i = 0; i < n; ++i) psi[i] *= half_phase[i];
      if (observer) observer((s + 1) * dt, psi);
    }
  } else {
    // Cayley form of the kinetic half: exactly unitary, O(dt^2).
    const double h = grid.h();
    const double ad = 1.0 / (h * h), ao = -0.5 / (h * h);
    const cdouble diag = 1.0 + 0.5i * dt * ad, off = 0.5i * dt * ao;
    const cdouble rdiag = 1.0 - 0.5i * dt * ad, roff = -0.5i * dt * ao;
    std::vector<cdouble> cp(n), inv_denom(n), rhs(n);
    {
      cdouble prev{0.0, 0.0};
      for (int k = 0; k < n; ++k) {
        const cdouble denom = diag - off * prev;
        inv_denom[k] = 1.0 / denom;
        prev = off * inv_denom[k];
        cp[k] = prev;
      }
    }
    for (int s = 0; s < steps; ++s) {
      for (int i = 0; i < n; ++i) psi[i] *= half_phase[i];
      for (int i = 0; i < n; ++i) {
        cdouble r = rdiag * psi[i];
        if (i > 0) r += roff * psi[i - 1];
        if (i + 1 < n) r += roff * psi[i + 1];
        rhs[i] = r;
      }
      cdouble prev{0.0, 0.0};
      for (int k = 0; k < n; ++k) {
        rhs[k] = (rhs[k] - off * prev) * inv_denom[k];
        prev = rhs[k];
      }
      psi[n - 1] = rhs[n - 1];
      for (int k = n - 2; k >= 0; --k) {
        rhs[k] -= cp[k] * rhs[k + 1];
        psi[k] = rhs[k];
      }
      for (int i = 0; i < n; ++i) psi[i] *= half_phase[i];
      if (observer) observer((s + 1) * dt, psi);
    }
  }
}

std::vector<double> effective_potential(const CurvatureProfile& p, const Line1D& grid) {
  std::vector<double> v(grid.ns);
  for (int i = 0; i < grid.ns; ++i) {
    const double k = p.k(grid.s(i));
    v[i] = -k * k / 8.0;
  }
  return v;
}

std::vector<cdouble> effective_propagate(const CurvatureProfile& p, const Profile& f,
                                         const Line1D& grid, double dt, double T,
                                         LineStepper stepper) {
  std::vector<cdouble> psi(grid.ns);
  for (int i = 0; i < grid.ns; ++i) psi[i] = f(grid.s(i));
  line_propagate(psi, grid, effective_potential(p, grid), dt, T, stepper);
  return psi;
}

double ground_state_energy(const std::vector<double>& potential, const Line1D& grid) {
  const int n = grid.ns;
  const double h = grid.h();
  const double ad = 1.0 / (h * h), ao = -0.5 / (h * h);
  double vmin = potential[0];
  for (double v : potential) vmin = std::min(vmin, v);
  const double shift = vmin - 1.0;

  // Inverse iteration on (A - shift I), A = kinetic + diag(V), Dirichlet.
  std::vector<double> diag(n), x(n, 1.0), y(n), cp(n), inv_denom(n);
  for (int i = 0; i < n; ++i) diag[i] = ad + potential[i] - shift;
  {
    double prev = 0.0;
    for (int k = 0; k < n; ++k) {
      const double denom = diag[k] - ao * prev;
      inv_denom[k] = 1.0 / denom;
      prev = ao * inv_denom[k];
      cp[k] = prev;
    }
  }
  double lambda = 0.0;
  for (int it = 0; it < 500; ++it) {
    // Solve (A - shift) y = x.
    for (int k = 0; k < n; ++k) {
      y[k] = (x[k] - ao * (k > 0 ? y[k - 1] : 0.0)) * inv_denom[k];
    }
    for (int k = n - 2; k >= 0; --k) y[k] -= cp[k] * y[k + 1];
    double nrm = 0.0;
    for (double v : y) nrm += v * v;
    nrm = std::sqrt(nrm);
    for (int k = 0; k < n; ++k) y[k] /= nrm;
    // Rayleigh quotient of A.
    double num = 0.0;
    for (int k = 0; k < n; ++k) {
      double av = diag[k] * y[k];
      if (k > 0) av += ao * y[k - 1];
      if (k + 1 < n) av += ao * y[k + 1];
      num += y[k] * av;
    }
    const double next = num + shift;
    const bool done = it > 3 && std::abs(next - lambda) < 1e-12 * std::max(1.0, std::abs(next));
    lambda = next;
    x = y;
    if (done) break;
  }
  return lambda;
}

std::vector<cdouble> line_derivative(const std::vector<cdouble>& psi, const Line1D& grid) {
  const int n = grid.ns;
  std::vector<cdouble> out = psi;
  const double period = grid.s1 - grid.s0 + grid.h();
  Fft1D fft(out);
  fft.forward();
  for (int i = 0; i < n; ++i) {
    const double k = wavenumber_1d(i, n, period);
    out[i] *= 1i * k / static_cast<double>(n);
  }
  fft.backward();
  return out;
}

double line_norm(const std::vector<cdouble>& psi, const Line1D& grid) {
  double acc = 0.0;
  for (const cdouble& v : psi) acc += std::norm(v);
  return std::sqrt(acc * grid.h());
}

}  // namespace qglab
