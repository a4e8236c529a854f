#pragma once

#include <functional>
#include <vector>

#include "qglab/geometry.hpp"
#include "qglab/grid.hpp"
#include "qglab/hermite.hpp"
#include "qglab/profile.hpp"

namespace qglab {

enum class Stepper { SpectralSplit, CrankNicolson };

// Parameters of the modified evolution exp(-i t (H(eps) - E_band/eps)).
struct EvolutionConfig {
  double epsilon = 0.04;
  int band = 0;
  double dt = 1e-3;
  double T = 0.5;
  Stepper stepper = Stepper::SpectralSplit;
  int observer_stride = 0;  // call observer every `stride` steps (0: endpoints only)
};

using Observer = std::function<void(double t, const Field2D&)>;

struct PropagationStats {
  double norm_drift = 0.0;
  int steps = 0;
};

// Evolve psi in place under -1/2 Laplacian + d^2/(2 eps^2) - E_band/eps,
// with d the sampled distance field. The observer (if any) sees the state
// at t = 0, every observer_stride steps, and at t = T. Aborts with
// numeric_error if the norm drifts by more than 1e-4.
PropagationStats propagate(Field2D& psi, const EvolutionConfig& cfg,
                           const DistanceGrid& dist, const Observer& observer = {});

// Subband product state f(x_j) Phi_band^eps(y_j) sampled on the grid.
Field2D prepare_initial(const Profile& f, int edge, int band, double epsilon,
                        const Grid2D& grid, const MetricGraph& g);

// One transverse component s_j^m at a fixed time, sampled along the edge.
struct EdgeTrace {
  int edge = 0;
  int band = 0;
  std::vector<double> xs;        // edge coordinate
  std::vector<cdouble> values;   // s(x)
  double clipped_fraction = 0.0; // sampling lines that left the grid

  double l2_norm() const;
};

// s(x) = integral Phi_band^eps(y)^* psi(x_j = x, y_j = y) dy. Axis-aligned
// edges integrate directly over grid columns; oblique edges interpolate
// along normal lines and use Gauss-Legendre in y.
EdgeTrace project_subband(const Field2D& psi, const MetricGraph& g, int edge,
                          int band, double epsilon);
EdgeTrace project_subband(const Field2D& psi, const MetricGraph& g, int edge,
                          int band, double epsilon, const std::vector<double>& xs);

// <chi, s> with chi a real test function supported in [chi_lo, chi_hi],
// which must lie inside the trace's parameter range.
cdouble weak_pairing(const EdgeTrace& trace, const std::function<double(double)>& chi,
                     double chi_lo, double chi_hi);

// L2 norm of the field restricted to {d >= delta0}.
double tail_mass(const Field2D& psi, const DistanceGrid& dist, double delta0);

struct EnergySplit {
  double grad_x = 0.0;   // 1/2 ||dpsi/dx||^2
  double grad_y = 0.0;   // 1/2 ||dpsi/dy||^2
  double potential = 0.0;  // 1/(2 eps^2) ||d psi||^2

  double total() const { return grad_x + grad_y + potential; }
};

// Spectral gradients plus the potential expectation.
EnergySplit energy_components(const Field2D& psi, const DistanceGrid& dist, double epsilon);

// || (1/(2 eps^2)) (d^2 - y_j^2) f Phi_band ||_{L2} over the grid: the
// residual coupling left after subtracting the edge's own harmonic well.
double coupling_residual(const Profile& f, int edge, int band, double epsilon,
                         const MetricGraph& g, const DistanceGrid& dist);

}  // namespace qglab
