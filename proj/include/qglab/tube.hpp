#pragma once

#include <vector>

#include "qglab/bent.hpp"
#include "qglab/grid.hpp"
#include "qglab/hermite.hpp"
#include "qglab/line1d.hpp"
#include "qglab/profile.hpp"

namespace qglab {

// Curvilinear (s, u) grid on the tube |u| <= w around the bent curve, with
// Dirichlet walls at u = +-w. Only interior u nodes carry degrees of
// freedom; s runs over [s0, s1] with Dirichlet beyond.
struct TubeGrid {
  double s0 = -4.0;
  double s1 = 4.0;
  int ns = 512;
  double w = 0.4;
  int nu = 96;

  double hs() const { return (s1 - s0) / (ns - 1); }
  double hu() const { return 2.0 * w / (nu + 1); }
  double s(int i) const { return s0 + i * hs(); }
  double u(int k) const { return -w + (k + 1) * hu(); }
  std::size_t idx(int i, int k) const { return static_cast<std::size_t>(k) * ns + i; }
  std::size_t size() const { return static_cast<std::size_t>(ns) * nu; }
  double cell() const { return hs() * hu(); }
};

struct TubeField {
  TubeGrid grid;
  std::vector<cdouble> values;

  explicit TubeField(const TubeGrid& g) : grid(g), values(g.size(), cdouble{0.0, 0.0}) {}
  cdouble& at(int i, int k) { return values[grid.idx(i, k)]; }
  cdouble at(int i, int k) const { return values[grid.idx(i, k)]; }
  double norm() const;
};

struct TubeConfig {
  double epsilon = 0.01;
  int band = 0;  // subtracted phase E_band/eps
  double dt = 2e-4;
  double T = 0.5;
  int observer_stride = 0;
};

using TubeObserver = std::function<void(double t, const TubeField&)>;

// Dirichlet tube Hamiltonian in curvilinear coordinates (flat ds du
// measure): conservative -1/2 d/ds (1+u k)^-2 d/ds, transverse oscillator,
// and the geometric potential. Strang-split Crank-Nicolson; every factor is
// unitary, so the norm is conserved to solver accuracy.
struct TubeStats {
  double norm_drift = 0.0;
  int steps = 0;
};

TubeStats tube_propagate(TubeField& psi, const CurvatureProfile& p, const TubeConfig& cfg,
                         const TubeObserver& observer = {});

// Transverse eigenpair of -1/2 d^2/du^2 + u^2/(2 eps^2) on (-w, w) with
// Dirichlet walls, discretized on the tube's interior u nodes.
struct BoxMode {
  std::vector<double> values;  // normalized: sum |phi|^2 hu = 1
  double energy = 0.0;
};

BoxMode dirichlet_box_mode(const TubeGrid& grid, double epsilon, int band);

// Product initial state f(s) * phi(u) on the tube.
TubeField tube_product_state(const TubeGrid& grid, const Profile& f,
                             const std::vector<double>& transverse);

// Harmonic transverse mode sampled on the tube's u nodes.
std::vector<double> tube_harmonic_mode(const TubeGrid& grid, double epsilon, int band);

// || tube evolution of f*Phi - (exp(-iTK(delta)) f) * Phi || at the sampled
// times. The effective side is stepped with the same implicit s-kinetic so
// the comparison isolates the curvature coupling terms.
struct TubeEffectiveComparison {
  std::vector<double> times;
  std::vector<double> error;   // flat tube L2 norm of the difference
  bool admissible_tail = false;
  bool admissible_full = false;
};

TubeEffectiveComparison compare_tube_vs_effective(const CurvatureProfile& p, double epsilon,
                                                  int band, const Profile& f,
                                                  const TubeGrid& grid, double dt, double T,
                                                  int snapshots);

// Froese-Herbst comparison between the full planar evolution with potential
// d_delta^2/(2 eps^2) and the Dirichlet tube evolution of the restricted
// initial state, both started from f * Phi_band on the incoming edge.
struct PlaneTubeComparison {
  std::vector<double> times;
  std::vector<double> tail;  // ||F_{d>=delta} psi_plane||
  std::vector<double> diff;  // ||F_{d<delta} psi_plane - mapped tube field||
};

struct PlaneTubeSetup {
  Grid2D plane_grid;
  TubeGrid tube_grid;
  double dt = 2e-4;
  double T = 0.4;
  int snapshots = 8;
};

PlaneTubeComparison compare_plane_vs_tube(const CurvatureProfile& p, double epsilon, int band,
                                          const Profile& f, const PlaneTubeSetup& setup);

}  // namespace qglab
