#include "qglab/resolvent.hpp"

#include <cmath>
#include <stdexcept>

#include "qglab/errors.hpp"

namespace qglab {

using namespace std::complex_literals;

SpectralParam::SpectralParam(cdouble z_) : z(z_) {
  if (!(z.imag() > 0.0)) throw std::invalid_argument("SpectralParam: Im z must be > 0");
}

cdouble free_kernel(const SpectralParam& zp, double w) {
  const cdouble z = zp.z;
  return 0.5i / z * std::exp(1i * z * std::abs(w));
}

PotentialQ PotentialQ::from_bump(const std::function<double(double)>& bump, double scale,
                                 int panels, int nodes_per_panel) {
  PotentialQ out;
  out.rule = gauss_legendre_panels(-1.0, 1.0, panels, nodes_per_panel);
  const std::size_t n = out.rule.size();
  out.q.resize(n);
  out.qhalf.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = bump(out.rule.x[i]);
    out.q[i] = -scale * k * k / 8.0;
    out.qhalf[i] = std::sqrt(-out.q[i]);
    out.l1 += out.rule.w[i] * (-out.q[i]);
  }
  if (!(out.l1 > 0.0)) throw std::invalid_argument("PotentialQ: potential vanishes identically");
  return out;
}

double KernelMatrix::hs_norm() const {
  double acc = 0.0;
  for (int i = 0; i < k.rows(); ++i)
    for (int j = 0; j < k.cols(); ++j) acc += rows.w[i] * cols.w[j] * std::norm(k(i, j));
  return std::sqrt(acc);
}

std::vector<cdouble> KernelMatrix::apply(const std::vector<cdouble>& f) const {
  if (f.size() != cols.size()) throw std::invalid_argument("KernelMatrix::apply: size mismatch");
  std::vector<cdouble> out(rows.size(), cdouble{0.0, 0.0});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    cdouble acc{0.0, 0.0};
    for (std::size_t j = 0; j < cols.size(); ++j) acc += k(i, j) * cols.w[j] * f[j];
    out[i] = acc;
  }
  return out;
}

double hs_distance(const KernelMatrix& a, const KernelMatrix& b) {
  if (a.rows.size() != b.rows.size() || a.cols.size() != b.cols.size())
    throw std::invalid_argument("hs_distance: grid mismatch");
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    if (std::abs(a.rows.x[i] - b.rows.x[i]) > 1e-12)
      throw std::invalid_argument("hs_distance: grid mismatch");
  double acc = 0.0;
  for (int i = 0; i < a.k.rows(); ++i)
    for (int j = 0; j < a.k.cols(); ++j)
      acc += a.rows.w[i] * a.cols.w[j] * std::norm(a.k(i, j) - b.k(i, j));
  return std::sqrt(acc);
}

ABCKernels build_ABC(const SpectralParam& z, double delta, const PotentialQ& Q,
                     const QuadRule& line) {
  if (delta < 0.0) throw std::invalid_argument("build_ABC: delta must be >= 0");
  const int nl = static_cast<int>(line.size());
  const int nq = static_cast<int>(Q.rule.size());
  ABCKernels out;
  out.a.rows = line;
  out.a.cols = Q.rule;
  out.a.k.resize(nl, nq);
  out.b.rows = Q.rule;
  out.b.cols = Q.rule;
  out.b.k.resize(nq, nq);
  out.c.rows = Q.rule;
  out.c.cols = line;
  out.c.k.resize(nq, nl);
  for (int i = 0; i < nl; ++i)
    for (int j = 0; j < nq; ++j)
      out.a.k(i, j) = free_kernel(z, line.x[i] - delta * Q.rule.x[j]) * Q.qhalf[j];
  for (int i = 0; i < nq; ++i)
    for (int j = 0; j < nq; ++j)
      out.b.k(i, j) = -Q.qhalf[i] * free_kernel(z, delta * (Q.rule.x[i] - Q.rule.x[j])) * Q.qhalf[j];
  for (int i = 0; i < nq; ++i)
    for (int j = 0; j < nl; ++j)
      out.c.k(i, j) = -Q.qhalf[i] * free_kernel(z, delta * Q.rule.x[i] - line.x[j]);
  return out;
}

KKResult kk_resolvent(const SpectralParam& z, double delta, const PotentialQ& Q,
                      const QuadRule& line) {
  if (!(delta > 0.0)) throw std::invalid_argument("kk_resolvent: delta must be > 0");
  const ABCKernels abc = build_ABC(z, delta, Q, line);
  const int nq = static_cast<int>(Q.rule.size());
  const int nl = static_cast<int>(line.size());

  // (delta + B) as an integral operator on the Q grid: delta I + B diag(w).
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(nq, nq) * delta;
  for (int i = 0; i < nq; ++i)
    for (int j = 0; j < nq; ++j) m(i, j) += abc.b.k(i, j) * Q.rule.w[j];

  KKResult out;
  {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const double smin = svd.singularValues()(nq - 1);
    const double smax = svd.singularValues()(0);
    out.condition = smax / std::max(smin, 1e-300);
    if (smin < 1e-12 * smax)
      throw numeric_error("kk_resolvent: delta + B_delta numerically singular");
  }

  // Z solves (delta + B) Z = C columnwise.
  const Eigen::MatrixXcd zmat = m.partialPivLu().solve(abc.c.k);

  out.kernel.rows = line;
  out.kernel.cols = line;
  out.kernel.k.resize(nl, nl);
  for (int i = 0; i < nl; ++i)
    for (int j = 0; j < nl; ++j) {
      cdouble corr{0.0, 0.0};
      for (int q = 0; q < nq; ++q) corr += abc.a.k(i, q) * Q.rule.w[q] * zmat(q, j);
      out.kernel.k(i, j) = free_kernel(z, line.x[i] - line.x[j]) - corr;
    }
  return out;
}

KKResult resolvent_of_K(const SpectralParam& z, double delta, double theta,
                        const PotentialQ& Q_base, const QuadRule& line) {
  // K(delta) - z^2 = 1/2 (H - 2 z^2) with H = -d^2 + delta^-2 (2 theta^2 Q)(./delta).
  PotentialQ scaled = Q_base;
  const double s = 2.0 * theta * theta;
  scaled.l1 = 0.0;
  for (std::size_t i = 0; i < scaled.q.size(); ++i) {
    scaled.q[i] *= s;
    scaled.qhalf[i] = std::sqrt(-scaled.q[i]);
    scaled.l1 += scaled.rule.w[i] * (-scaled.q[i]);
  }
  const SpectralParam z2(std::sqrt(2.0) * z.z);
  KKResult out = kk_resolvent(z2, delta, scaled, line);
  out.kernel.k *= 2.0;
  return out;
}

cdouble dirichlet_kernel(const SpectralParam& z, double s, double r) {
  return free_kernel(z, s - r) - free_kernel(z, s) * free_kernel(z, -r) / free_kernel(z, 0.0);
}

KernelMatrix dirichlet_kernel_matrix(const SpectralParam& z, const QuadRule& line) {
  KernelMatrix out;
  out.rows = line;
  out.cols = line;
  const int n = static_cast<int>(line.size());
  out.k.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.k(i, j) = dirichlet_kernel(z, line.x[i], line.x[j]);
  return out;
}

RankOneLimit limit_rank_one(const SpectralParam& z, const PotentialQ& Q) {
  RankOneLimit out;
  const int nq = static_cast<int>(Q.rule.size());
  out.phi.resize(nq);
  const double inv = 1.0 / std::sqrt(Q.l1);
  for (int i = 0; i < nq; ++i) out.phi[i] = Q.qhalf[i] * inv;
  out.b0_inverse.rows = Q.rule;
  out.b0_inverse.cols = Q.rule;
  out.b0_inverse.k.resize(nq, nq);
  const cdouble factor = -1.0 / (free_kernel(z, 0.0) * Q.l1);
  for (int i = 0; i < nq; ++i)
    for (int j = 0; j < nq; ++j) out.b0_inverse.k(i, j) = factor * out.phi[i] * out.phi[j];
  return out;
}

FdResolvent fd_resolvent_oracle(const SpectralParam& z, const std::vector<double>& potential,
                                const Line1D& grid, const std::vector<cdouble>& rhs,
                                double kinetic_coeff) {
  const int n = grid.ns;
  if (static_cast<int>(potential.size()) != n || static_cast<int>(rhs.size()) != n)
    throw std::invalid_argument("fd_resolvent_oracle: size mismatch");
  const double h = grid.h();
  const double c = kinetic_coeff;
  const cdouble z2 = z.z * z.z;
  const cdouble off = -c / (h * h);

  // Complex Thomas solve, Dirichlet truncation at the grid ends.
  std::vector<cdouble> diag(n), cp(n), sol(n);
  for (int i = 0; i < n; ++i) diag[i] = 2.0 * c / (h * h) + potential[i] - z2;
  cdouble prev{0.0, 0.0};
  std::vector<cdouble> inv_denom(n);
  for (int i = 0; i < n; ++i) {
    const cdouble denom = diag[i] - (i > 0 ? off * prev : cdouble{0.0, 0.0});
    inv_denom[i] = 1.0 / denom;
    prev = off * inv_denom[i];
    cp[i] = prev;
  }
  for (int i = 0; i < n; ++i)
    sol[i] = (rhs[i] - (i > 0 ? off * sol[i - 1] : cdouble{0.0, 0.0})) * inv_denom[i];
  for (int i = n - 2; i >= 0; --i) sol[i] -= cp[i] * sol[i + 1];

  FdResolvent out;
  out.u = sol;
  double res2 = 0.0, rhs2 = 0.0;
  for (int i = 0; i < n; ++i) {
    cdouble r = diag[i] * sol[i];
    if (i > 0) r += off * sol[i - 1];
    if (i + 1 < n) r += off * sol[i + 1];
    res2 += std::norm(r - rhs[i]);
    rhs2 += std::norm(rhs[i]);
  }
  out.residual = std::sqrt(res2 / std::max(rhs2, 1e-300));
  return out;
}

}  // namespace qglab
