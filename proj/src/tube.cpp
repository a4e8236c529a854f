#include "qglab/tube.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "qglab/errors.hpp"
#include "qglab/evolution.hpp"

namespace qglab {

using namespace std::complex_literals;

double TubeField::norm() const {
  double acc = 0.0;
  for (const cdouble& v : values) acc += std::norm(v);
  return std::sqrt(acc * grid.cell());
}

namespace {

// Cayley step for a symmetric tridiagonal operator with per-line
// coefficients: solves (I + i theta A) x = (I - i theta A) x_old.
struct TriCayley {
  int n = 0;
  std::vector<cdouble> dp, op;  // I + i theta A
  std::vector<cdouble> dm, om;  // I - i theta A
  std::vector<cdouble> cp, inv_denom;

  // diag[i], off[i] (coupling i <-> i+1) of the real symmetric A.
  TriCayley(const std::vector<double>& diag, const std::vector<double>& off, double theta)
      : n(static_cast<int>(diag.size())) {
    dp.resize(n);
    op.resize(n);
    dm.resize(n);
    om.resize(n);
    cp.resize(n);
    inv_denom.resize(n);
    for (int i = 0; i < n; ++i) {
      dp[i] = 1.0 + 1i * theta * diag[i];
      dm[i] = 1.0 - 1i * theta * diag[i];
      const double o = (i + 1 < n) ? off[i] : 0.0;
      op[i] = 1i * theta * o;
      om[i] = -1i * theta * o;
    }
    cdouble prev{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
      const cdouble denom = dp[i] - (i > 0 ? op[i - 1] * prev : cdouble{0.0, 0.0});
      inv_denom[i] = 1.0 / denom;
      prev = op[i] * inv_denom[i];
      cp[i] = prev;
    }
  }

  void apply(cdouble* x, int stride, cdouble* scratch) const {
    for (int i = 0; i < n; ++i) {
      cdouble r = dm[i] * x[i * stride];
      if (i > 0) r += om[i - 1] * x[(i - 1) * stride];
      if (i + 1 < n) r += om[i] * x[(i + 1) * stride];
      scratch[i] = r;
    }
    cdouble prev{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
      scratch[i] = (scratch[i] - (i > 0 ? op[i - 1] * prev : cdouble{0.0, 0.0})) * inv_denom[i];
      prev = scratch[i];
    }
    x[(n - 1) * stride] = scratch[n - 1];
    for (int i = n - 2; i >= 0; --i) {
      scratch[i] -= cp[i] * scratch[i + 1];
      x[i * stride] = scratch[i];
    }
  }
};

}  // namespace

TubeStats tube_propagate(TubeField& psi, const CurvatureProfile& p, const TubeConfig& cfg,
                         const TubeObserver& observer) {
  const TubeGrid& g = psi.grid;
  if (p.max_k() * g.w >= 1.0)
    throw numeric_error("tube_propagate: tube wider than the radius of curvature");
  const double steps_real = cfg.T / cfg.dt;
  const int steps = static_cast<int>(std::llround(steps_real));
  if (std::abs(steps_real - steps) > 1e-6)
    throw std::invalid_argument("tube_propagate: T must be an integer multiple of dt");
  if (cfg.dt > 0.5 * cfg.epsilon)
    throw std::invalid_argument("tube_propagate: dt exceeds transverse accuracy bound");

  const double eshift = mode_energy(cfg.band, cfg.epsilon);
  const double inv2e2 = 0.5 / (cfg.epsilon * cfg.epsilon);

  // Half-step diagonal phase: geometric potential + transverse well - E/eps.
  std::vector<cdouble> half_phase(g.size());
  for (int k = 0; k < g.nu; ++k) {
    const double u = g.u(k);
    for (int i = 0; i < g.ns; ++i) {
      const double v = geometric_potential(p, g.s(i), u) + inv2e2 * u * u - eshift;
      half_phase[g.idx(i, k)] = std::exp(-0.5i * cfg.dt * v);
    }
  }

  // Longitudinal operator rows: conservative -1/2 d/ds J^-2 d/ds per u row.
  const double hs = g.hs();
  std::vector<TriCayley> srows;
  srows.reserve(g.nu);
  for (int k = 0; k < g.nu; ++k) {
    const double u = g.u(k);
    std::vector<double> diag(g.ns), off(g.ns, 0.0), chalf(g.ns + 1);
    for (int i = 0; i <= g.ns; ++i) {
      const double sm = g.s0 + (i - 0.5) * hs;
      const double j = jacobian(p, sm, u);
      chalf[i] = 1.0 / (j * j);
    }
    for (int i = 0; i < g.ns; ++i) {
      diag[i] = 0.5 * (chalf[i] + chalf[i + 1]) / (hs * hs);
      if (i + 1 < g.ns) off[i] = -0.5 * chalf[i + 1] / (hs * hs);
    }
    srows.emplace_back(diag, off, 0.5 * cfg.dt);
  }

  // Transverse operator: -1/2 d^2/du^2, Dirichlet walls, same for every column.
  const double hu = g.hu();
  TriCayley ucol(
      [&] {
        std::vector<double> d(g.nu, 1.0 / (hu * hu));
        return d;
      }(),
      [&] {
        std::vector<double> o(g.nu, -0.5 / (hu * hu));
        return o;
      }(),
      0.25 * cfg.dt);  // applied twice per step

  const double norm0 = psi.norm();
  auto check_norm = [&](double t) {
    const double drift = std::abs(psi.norm() - norm0);
    if (drift > 1e-4) {
      std::ostringstream msg;
      msg << "tube_propagate: instability at t=" << t << " (norm drift " << drift << ")";
      throw numeric_error(msg.str());
    }
    return drift;
  };

  std::vector<cdouble> scratch(std::max(g.ns, g.nu));
  if (observer) observer(0.0, psi);
  double drift = 0.0;
  for (int step = 0; step < steps; ++step) {
    for (std::size_t m = 0; m < g.size(); ++m) psi.values[m] *= half_phase[m];
    for (int i = 0; i < g.ns; ++i) ucol.apply(&psi.values[g.idx(i, 0)], g.ns, scratch.data());
    for (int k = 0; k < g.nu; ++k) srows[k].apply(&psi.values[g.idx(0, k)], 1, scratch.data());
    for (int i = 0; i < g.ns; ++i) ucol.apply(&psi.values[g.idx(i, 0)], g.ns, scratch.data());
    for (std::size_t m = 0; m < g.size(); ++m) psi.values[m] *= half_phase[m];
    const double t = (step + 1) * cfg.dt;
    const bool report = (cfg.observer_stride > 0 && (step + 1) % cfg.observer_stride == 0);
    if (report || step + 1 == steps) {
      drift = std::max(drift, check_norm(t));
      if (observer) observer(t, psi);
    }
  }
  return TubeStats{drift, steps};
}

BoxMode dirichlet_box_mode(const TubeGrid& grid, double epsilon, int band) {
  const int n = grid.nu;
  if (band < 0 || band >= n) throw std::invalid_argument("dirichlet_box_mode: band out of range");
  const double hu = grid.hu();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  const double inv2e2 = 0.5 / (epsilon * epsilon);
  for (int k = 0; k < n; ++k) {
    const double u = grid.u(k);
    h(k, k) = 1.0 / (hu * hu) + inv2e2 * u * u;
    if (k + 1 < n) h(k, k + 1) = h(k + 1, k) = -0.5 / (hu * hu);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  BoxMode mode;
  mode.energy = solver.eigenvalues()(band);
  Eigen::VectorXd v = solver.eigenvectors().col(band);
  v /= v.norm() * std::sqrt(hu);
  mode.values.assign(v.data(), v.data() + n);
  return mode;
}

std::vector<double> tube_harmonic_mode(const TubeGrid& grid, double epsilon, int band) {
  const HermiteMode m{band, epsilon};
  std::vector<double> phi(grid.nu);
  for (int k = 0; k < grid.nu; ++k) phi[k] = m(grid.u(k));
  return phi;
}

TubeField tube_product_state(const TubeGrid& grid, const Profile& f,
                             const std::vector<double>& transverse) {
  if (static_cast<int>(transverse.size()) != grid.nu)
    throw std::invalid_argument("tube_product_state: transverse size mismatch");
  TubeField psi(grid);
  for (int k = 0; k < grid.nu; ++k)
    for (int i = 0; i < grid.ns; ++i) psi.at(i, k) = f(grid.s(i)) * transverse[k];
  return psi;
}

TubeEffectiveComparison compare_tube_vs_effective(const CurvatureProfile& p, double epsilon,
                                                  int band, const Profile& f,
                                                  const TubeGrid& grid, double dt, double T,
                                                  int snapshots) {
  TubeEffectiveComparison out;
  {
    // Admissibility of this (eps, delta) pairing read off delta = eps^beta.
    const double beta = std::log(p.delta) / std::log(epsilon);
    out.admissible_tail = beta < 0.5;
    out.admissible_full = beta < 0.1;
  }

  const std::vector<double> phi = tube_harmonic_mode(grid, epsilon, band);
  TubeField psi = tube_product_state(grid, f, phi);

  TubeConfig cfg;
  cfg.epsilon = epsilon;
  cfg.band = band;
  cfg.dt = dt;
  cfg.T = T;
  const int steps = static_cast<int>(std::llround(T / dt));
  cfg.observer_stride = std::max(1, steps / std::max(1, snapshots));

  std::vector<std::pair<double, TubeField>> shots;
  tube_propagate(psi, p, cfg, [&](double t, const TubeField& state) {
    shots.emplace_back(t, state);
  });

  // Effective 1D side on the matching s grid, same implicit kinetic stencil.
  Line1D line{grid.s0, grid.s1, grid.ns};
  std::vector<cdouble> eff(grid.ns);
  for (int i = 0; i < grid.ns; ++i) eff[i] = f(line.s(i));
  const std::vector<double> veff = effective_potential(p, line);

  std::size_t shot = 0;
  auto compare_at = [&](double t, const std::vector<cdouble>& g1d) {
    while (shot < shots.size() && std::abs(shots[shot].first - t) < 0.5 * dt) {
      const TubeField& tf = shots[shot].second;
      double acc = 0.0;
      for (int k = 0; k < grid.nu; ++k)
        for (int i = 0; i < grid.ns; ++i)
          acc += std::norm(tf.at(i, k) - g1d[i] * phi[k]);
      out.times.push_back(t);
      out.error.push_back(std::sqrt(acc * grid.cell()));
      ++shot;
    }
  };
  line_propagate(eff, line, veff, dt, T, LineStepper::CrankNicolson,
                 [&](double t, const std::vector<cdouble>& state) { compare_at(t, state); });
  return out;
}

namespace {

// Tube field value at arbitrary (s, u); zero beyond the Dirichlet walls and
// outside the s range. Quintic stencil nodes falling outside the interior
// grid contribute zero (the field is exponentially small at the walls).
cdouble sample_tube(const TubeField& f, double s, double u) {
  const TubeGrid& g = f.grid;
  if (std::abs(u) >= g.w) return {0.0, 0.0};
  const double fs = (s - g.s0) / g.hs();
  const double fu = (u + g.w) / g.hu() - 1.0;  // interior index
  const int i0 = static_cast<int>(std::floor(fs)) - 2;
  const int k0 = static_cast<int>(std::floor(fu)) - 2;
  if (i0 + 5 < 0 || i0 >= g.ns || k0 + 5 < 0 || k0 >= g.nu) return {0.0, 0.0};
  double ws[6], wu[6];
  const double ts = fs - i0, tu = fu - k0;
  for (int m = 0; m < 6; ++m) {
    double num = 1.0, den = 1.0;
    for (int j = 0; j < 6; ++j) {
      if (j == m) continue;
      num *= (ts - j);
      den *= double(m - j);
    }
    ws[m] = num / den;
  }
  for (int m = 0; m < 6; ++m) {
    double num = 1.0, den = 1.0;
    for (int j = 0; j < 6; ++j) {
      if (j == m) continue;
      num *= (tu - j);
      den *= double(m - j);
    }
    wu[m] = num / den;
  }
  cdouble acc{0.0, 0.0};
  for (int ku = 0; ku < 6; ++ku) {
    const int k = k0 + ku;
    if (k < 0 || k >= g.nu) continue;
    cdouble row{0.0, 0.0};
    for (int is = 0; is < 6; ++is) {
      const int i = i0 + is;
      if (i < 0 || i >= g.ns) continue;
      row += ws[is] * f.at(i, k);
    }
    acc += wu[ku] * row;
  }
  return acc;
}

}  // namespace

PlaneTubeComparison compare_plane_vs_tube(const CurvatureProfile& p, double epsilon, int band,
                                          const Profile& f, const PlaneTubeSetup& setup) {
  const Curve2D curve(p);
  const Grid2D& pg = setup.plane_grid;
  const double w = setup.tube_grid.w;

  // Tubular-coordinate map of every plane node, computed once.
  const std::size_t n = pg.size();
  std::vector<double> smap(n), umap(n), dmap(n);
  for (int j = 0; j < pg.ny; ++j)
    for (int i = 0; i < pg.nx; ++i) {
      const auto near = curve.nearest({pg.x(i), pg.y(j)});
      const std::size_t m = pg.idx(i, j);
      smap[m] = near.s;
      umap[m] = near.u;
      dmap[m] = near.dist;
    }

  // Planar initial state f(s) Phi(u); exact product on the straight part
  // where f is supported.
  const HermiteMode mode{band, epsilon};
  Field2D plane(pg);
  for (std::size_t m = 0; m < n; ++m) plane.values[m] = f(smap[m]) * mode(umap[m]);

  // Restricted initial state on the tube.
  const std::vector<double> phi = tube_harmonic_mode(setup.tube_grid, epsilon, band);
  TubeField tube = tube_product_state(setup.tube_grid, f, phi);

  const int steps = static_cast<int>(std::llround(setup.T / setup.dt));
  const int stride = std::max(1, steps / std::max(1, setup.snapshots));

  TubeConfig tcfg;
  tcfg.epsilon = epsilon;
  tcfg.band = band;
  tcfg.dt = setup.dt;
  tcfg.T = setup.T;
  tcfg.observer_stride = stride;
  std::vector<std::pair<double, TubeField>> shots;
  tube_propagate(tube, p, tcfg, [&](double t, const TubeField& s) { shots.emplace_back(t, s); });

  DistanceGrid dist(pg, [&](Point2 q) { return curve.distance(q); });

  PlaneTubeComparison out;
  std::size_t shot = 0;
  auto observe = [&](double t, const Field2D& psi) {
    while (shot < shots.size() && std::abs(shots[shot].first - t) < 0.5 * setup.dt) {
      const TubeField& tf = shots[shot].second;
      double tail2 = 0.0, diff2 = 0.0;
      for (std::size_t m = 0; m < n; ++m) {
        if (dmap[m] >= w) {
          tail2 += std::norm(psi.values[m]);
        } else {
          const double jroot = std::sqrt(1.0 + umap[m] * p.k(smap[m]));
          const cdouble tv = sample_tube(tf, smap[m], umap[m]) / jroot;
          diff2 += std::norm(psi.values[m] - tv);
        }
      }
      out.times.push_back(t);
      out.tail.push_back(std::sqrt(tail2 * pg.cell()));
      out.diff.push_back(std::sqrt(diff2 * pg.cell()));
      ++shot;
    }
  };

  EvolutionConfig pcfg;
  pcfg.epsilon = epsilon;
  pcfg.band = band;
  pcfg.dt = setup.dt;
  pcfg.T = setup.T;
  pcfg.stepper = Stepper::SpectralSplit;
  pcfg.observer_stride = stride;
  propagate(plane, pcfg, dist, observe);
  return out;
}

}  // namespace qglab
