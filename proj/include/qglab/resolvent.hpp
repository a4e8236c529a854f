#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "qglab/line1d.hpp"
#include "qglab/quadrature.hpp"

namespace qglab {

// Spectral parameter z with Im z > 0 (resolvent set of -d^2/ds^2).
struct SpectralParam {
  cdouble z;

  explicit SpectralParam(cdouble z_);
};

// Free resolvent kernel g_z(w) = (i/2z) exp(i z |w|).
cdouble free_kernel(const SpectralParam& z, double w);

// Attractive short-range potential Q(s) = -k(s)^2/8 sampled on a quadrature
// rule over supp k = (-1, 1).
struct PotentialQ {
  QuadRule rule;
  std::vector<double> q;      // Q(s_i) <= 0
  std::vector<double> qhalf;  // |Q(s_i)|^(1/2)
  double l1 = 0.0;            // ||Q||_L1

  // Q from a base bump profile, optionally scaled by `scale` (the
  // -d^2 <-> -1/2 d^2 convention map multiplies Q by 2 theta^2).
  static PotentialQ from_bump(const std::function<double(double)>& bump, double scale = 1.0,
                              int panels = 8, int nodes_per_panel = 12);
};

// Discretized integral operator: kernel samples on rows x cols quadrature
// grids. Column weights are used when composing with functions; both weight
// sets enter the Hilbert-Schmidt norm.
struct KernelMatrix {
  QuadRule rows;
  QuadRule cols;
  Eigen::MatrixXcd k;

  double hs_norm() const;
  // (K f)(s_i) = sum_j K(s_i, r_j) w_j f(r_j).
  std::vector<cdouble> apply(const std::vector<cdouble>& f) const;
};

double hs_distance(const KernelMatrix& a, const KernelMatrix& b);

struct ABCKernels {
  KernelMatrix a;  // line x supp Q
  KernelMatrix b;  // supp Q x supp Q
  KernelMatrix c;  // supp Q x line
};

// A_delta(s,r) = g_z(s - delta r)|Q(r)|^(1/2),
// B_delta(s,r) = -|Q(s)|^(1/2) g_z(delta(s-r)) |Q(r)|^(1/2),
// C_delta(s,r) = -|Q(s)|^(1/2) g_z(delta s - r).
// delta = 0 gives the limit kernels A_0, B_0, C_0.
ABCKernels build_ABC(const SpectralParam& z, double delta, const PotentialQ& Q,
                     const QuadRule& line);

struct KKResult {
  KernelMatrix kernel;  // line x line
  double condition = 0.0;  // of delta + B_delta on the discretization
};

// Resolvent kernel of -d^2/ds^2 + delta^-2 Q(./delta) at z^2 through
// G_z - A_delta [delta + B_delta]^-1 C_delta.
KKResult kk_resolvent(const SpectralParam& z, double delta, const PotentialQ& Q,
                      const QuadRule& line);

// Same operator family expressed for K(delta) = -1/2 d^2 - k_delta^2/8:
// (K(delta) - z^2)^-1 = 2 (H - (sqrt2 z)^2)^-1 with Q scaled by 2 theta^2.
KKResult resolvent_of_K(const SpectralParam& z, double delta, double theta,
                        const PotentialQ& Q_base, const QuadRule& line);

// Kernel of the Dirichlet resolvent on the line split at s = 0.
cdouble dirichlet_kernel(const SpectralParam& z, double s, double r);
KernelMatrix dirichlet_kernel_matrix(const SpectralParam& z, const QuadRule& line);

struct RankOneLimit {
  std::vector<double> phi;   // normalized |Q|^(1/2)/||Q||_L1^(1/2) at Q nodes
  KernelMatrix b0_inverse;   // inverse of B_0 on span{phi}
};

RankOneLimit limit_rank_one(const SpectralParam& z, const PotentialQ& Q);

// Independent finite-difference resolvent: solves
// (-c u'' + V u - z^2 u) = rhs with Dirichlet truncation on `grid`.
// kinetic_coeff c is 1 for the kernel-calculus convention, 1/2 for K(delta).
struct FdResolvent {
  std::vector<cdouble> u;
  double residual = 0.0;  // ||(Op - z^2)u - rhs|| / ||rhs||
};

FdResolvent fd_resolvent_oracle(const SpectralParam& z, const std::vector<double>& potential,
                                const Line1D& grid, const std::vector<cdouble>& rhs,
                                double kinetic_coeff);

}  // namespace qglab
