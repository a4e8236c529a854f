#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "qglab/bent.hpp"
#include "qglab/profile.hpp"

namespace qglab {

using cdouble = std::complex<double>;

// Uniform 1D grid for the longitudinal dynamics; endpoints included,
// Dirichlet beyond for the implicit stepper, periodic for the spectral one.
struct Line1D {
  double s0 = -8.0;
  double s1 = 8.0;
  int ns = 1024;

  double h() const { return (s1 - s0) / (ns - 1); }
  double s(int i) const { return s0 + i * h(); }
};

enum class LineStepper { Spectral, CrankNicolson };

// exp(-i T (-1/2 d^2/ds^2 + V)) applied to the sampled state, in place.
// The spectral stepper treats the grid as periodic with period s1 - s0 + h.
void line_propagate(std::vector<cdouble>& psi, const Line1D& grid,
                    const std::vector<double>& potential, double dt, double T,
                    LineStepper stepper,
                    const std::function<void(double, const std::vector<cdouble>&)>& observer = {});

// Effective one-dimensional evolution exp(-i T K(delta)) f with
// K(delta) = -1/2 d^2/ds^2 - k_delta(s)^2 / 8.
std::vector<cdouble> effective_propagate(const CurvatureProfile& p, const Profile& f,
                                         const Line1D& grid, double dt, double T,
                                         LineStepper stepper = LineStepper::Spectral);

// Potential samples of K(delta) on the grid.
std::vector<double> effective_potential(const CurvatureProfile& p, const Line1D& grid);

// Lowest eigenvalue of the discretized -1/2 d^2/ds^2 + V (Dirichlet ends),
// by shifted inverse iteration.
double ground_state_energy(const std::vector<double>& potential, const Line1D& grid);

// Spectral derivative of a periodic sampled state.
std::vector<cdouble> line_derivative(const std::vector<cdouble>& psi, const Line1D& grid);

double line_norm(const std::vector<cdouble>& psi, const Line1D& grid);

}  // namespace qglab
