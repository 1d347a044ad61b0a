#include "spheuler/harness.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <sstream>

#include "spheuler/errors.hpp"

namespace spheuler {

namespace {

// Trapezoid in time over the snapshot sequence.
double time_trapezoid(const Trajectory& traj,
                      const std::vector<double>& per_snapshot) {
  const auto& snaps = traj.snapshots;
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < snaps.size(); ++k) {
    s += 0.5 * (per_snapshot[k] + per_snapshot[k + 1]) *
         (snaps[k + 1].t - snaps[k].t);
  }
  return s;
}

void check_omega(const SmoothCutoff& omega) {
  if (!(omega.lo() >= 1.0))
    throw DomainError("cutoff must equal 1 on [0, 1]");
}

}  // namespace

EnergyReport energy_report(const Trajectory& traj, double tol) {
  EnergyReport rep;
  rep.tol = tol;
  rep.initial_energy = traj.initial_energy;
  rep.sup_energy = 0.0;
  rep.sup_combined = 0.0;
  for (const auto& snap : traj.snapshots) {
    const double e =
        discrete_energy(traj.grid, snap, traj.params.rho_bar, traj.law);
    rep.sup_energy = std::max(rep.sup_energy, e);
    rep.sup_combined = std::max(rep.sup_combined, e + snap.dissipation.total());
  }
  rep.dissipation_total = traj.snapshots.back().dissipation.total();
  rep.pass = rep.sup_combined <= rep.initial_energy * (1.0 + tol) + 1e-12;
  return rep;
}

HigherIntegrability higher_integrability(const Trajectory& traj,
                                         const SmoothCutoff& omega) {
  check_omega(omega);
  const RadialGrid& grid = traj.grid;
  const double gamma_theta = traj.law.gamma + traj.law.theta;
  const std::size_t n = grid.size();
  std::vector<double> vel_k(traj.snapshots.size()), den_k(traj.snapshots.size());
  std::vector<double> f(n);
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const auto& snap = traj.snapshots[k];
    for (std::size_t i = 0; i < n; ++i) {
      const double u = snap.m[i] / snap.rho[i];
      f[i] = snap.rho[i] * std::abs(u) * u * u * omega.value(grid.node(i));
    }
    vel_k[k] = radial_integral(grid, f);
    for (std::size_t i = 0; i < n; ++i)
      f[i] = std::pow(snap.rho[i], gamma_theta) * omega.value(grid.node(i));
    den_k[k] = radial_integral(grid, f);
  }
  HigherIntegrability hi;
  hi.velocity_part = time_trapezoid(traj, vel_k);
  hi.density_part = time_trapezoid(traj, den_k);
  return hi;
}

double tail_density_integral(const Trajectory& traj, std::size_t snapshot,
                             int l, double r) {
  if (snapshot >= traj.snapshots.size())
    throw DomainError("tail_density_integral: snapshot index out of range");
  if (l < 0 || l > traj.grid.n_dim() - 1)
    throw DomainError("tail_density_integral: l outside {0,...,n-1}");
  const auto& snap = traj.snapshots[snapshot];
  std::vector<double> f(traj.grid.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    f[i] = std::pow(snap.rho[i], traj.law.gamma);
  return weighted_integral_from(traj.grid, f, r, l);
}

double tail_density_sup(const Trajectory& traj, int l, double r) {
  double sup = 0.0;
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k)
    sup = std::max(sup, tail_density_integral(traj, k, l, r));
  return sup;
}

double rho_cubed_integral(const Trajectory& traj, double r) {
  const RadialGrid& grid = traj.grid;
  std::vector<double> per_k(traj.snapshots.size());
  std::vector<double> f(grid.size());
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const auto& snap = traj.snapshots[k];
    for (std::size_t i = 0; i < f.size(); ++i)
      f[i] = snap.rho[i] * snap.rho[i] * snap.rho[i];
    per_k[k] = weighted_integral_from(grid, f, r, grid.n_dim() - 1);
  }
  return time_trapezoid(traj, per_k);
}

ViscousDerivativeReport viscous_derivative_integrals(
    const Trajectory& traj, double Delta, const SmoothCutoff& omega) {
  if (!(Delta > 0.0 && Delta < 0.5))
    throw DomainError("viscous_derivative_integrals: Delta outside (0, 1/2)");
  check_omega(omega);
  const RadialGrid& grid = traj.grid;
  const std::size_t n = grid.size();
  std::vector<double> grad_k(traj.snapshots.size()),
      log_k(traj.snapshots.size());
  std::vector<double> f(n), g(n);
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const auto& snap = traj.snapshots[k];
    const std::vector<double> rho_r = radial_derivative(grid, snap.rho);
    for (std::size_t i = 0; i < n; ++i) {
      const double om = omega.value(grid.node(i));
      const bool low = snap.rho[i] < Delta;
      const double base = low ? rho_r[i] * rho_r[i] * om * om : 0.0;
      f[i] = base;
      g[i] = low ? base / snap.rho[i] : 0.0;
    }
    grad_k[k] = radial_integral(grid, f);
    log_k[k] = radial_integral(grid, g);
  }
  const double eps = traj.params.eps;
  const double gamma = traj.law.gamma;
  const double a = traj.params.a;
  ViscousDerivativeReport rep;
  rep.small_density_gradient = eps * time_trapezoid(traj, grad_k);
  rep.log_density_gradient = eps * time_trapezoid(traj, log_k);
  rep.small_density_shape = std::sqrt(eps) * (1.0 + std::pow(Delta, 4.0 - gamma)) +
                            Delta / a + std::pow(Delta, 1.5) / std::sqrt(eps);
  rep.log_density_shape = std::abs(std::log(Delta)) +
                          std::sqrt(Delta) / std::sqrt(eps) +
                          std::sqrt(Delta) / a +
                          std::sqrt(eps) * std::abs(std::log(Delta)) *
                              std::pow(Delta, 0.5 * (2.0 - gamma));
  return rep;
}

namespace {

struct Truncation {
  // phi(rho), phi'(rho), phi''(rho) rho_r^2 (the quadratic-form integrand
  // weight), and phi - rho phi'.
  double value = 0.0;
  double deriv = 0.0;
  double second_weight = 0.0;  // phi'' evaluated pointwise
  double legendre = 0.0;       // phi - rho phi'
};

Truncation truncation_eval(TruncationKind kind, double Delta, double rho) {
  Truncation t;
  if (kind == TruncationKind::kQuadratic) {
    if (rho < Delta) {
      t.value = 0.5 * rho * rho;
      t.deriv = rho;
      t.second_weight = 1.0;
    } else {
      t.value = 0.5 * Delta * Delta + Delta * (rho - Delta);
      t.deriv = Delta;
      t.second_weight = 0.0;
    }
    const double mn = std::min(rho, Delta);
    t.legendre = -0.5 * mn * mn;
  } else {
    if (rho < Delta) {
      t.value = rho * std::log(rho) - rho;
      t.deriv = std::log(rho);
      t.second_weight = 1.0 / rho;
    } else {
      t.value = rho * std::log(Delta) - Delta;
      t.deriv = std::log(Delta);
      t.second_weight = 0.0;
    }
    t.legendre = -std::min(rho, Delta);
  }
  return t;
}

}  // namespace

IdentityReport continuity_identity_residual(const Trajectory& traj,
                                            TruncationKind kind, double Delta,
                                            const SmoothCutoff& omega) {
  if (!(Delta > 0.0 && Delta < 0.5))
    throw DomainError("continuity_identity_residual: Delta outside (0, 1/2)");
  const RadialGrid& grid = traj.grid;
  const std::size_t n = grid.size();
  const std::size_t K = traj.snapshots.size();
  const int ndim = grid.n_dim();
  const double eps = traj.params.eps;

  std::vector<double> om(n), om_r(n);
  for (std::size_t i = 0; i < n; ++i) {
    om[i] = omega.value(grid.node(i));
    om_r[i] = omega.derivative(grid.node(i));
  }

  std::vector<double> lhs_k(K), interior_k(K), cross_k(K), visc_cross_k(K),
      u_bracket_k(K), visc_bracket_k(K);
  std::vector<double> f1(n), f2(n), f3(n), f4(n);
  for (std::size_t k = 0; k < K; ++k) {
    const auto& snap = traj.snapshots[k];
    const std::vector<double> rho_r = radial_derivative(grid, snap.rho);
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = snap.m[i] / snap.rho[i];
    const std::vector<double> u_r = radial_derivative(grid, u);

    for (std::size_t i = 0; i < n; ++i) {
      const Truncation tr = truncation_eval(kind, Delta, snap.rho[i]);
      const double r = grid.node(i);
      f1[i] = tr.second_weight * rho_r[i] * rho_r[i] * om[i] * om[i];
      // (rho phi' - phi)(u_r + (n-1) u / r) om^2 r^(n-1)
      f2[i] = -tr.legendre * (u_r[i] + (ndim - 1) * u[i] / r) * om[i] * om[i];
      f3[i] = tr.value * u[i] * om[i] * om_r[i];
      f4[i] = tr.deriv * rho_r[i] * om[i] * om_r[i];
    }
    lhs_k[k] = radial_integral(grid, f1);
    interior_k[k] = radial_integral(grid, f2);
    cross_k[k] = radial_integral(grid, f3);
    visc_cross_k[k] = radial_integral(grid, f4);

    const Truncation tr_a = truncation_eval(kind, Delta, snap.rho[0]);
    const Truncation tr_b = truncation_eval(kind, Delta, snap.rho[n - 1]);
    u_bracket_k[k] = grid.geom(n - 1) * tr_b.value * u[n - 1] * om[n - 1] *
                         om[n - 1] -
                     grid.geom(0) * tr_a.value * u[0] * om[0] * om[0];
    visc_bracket_k[k] =
        grid.geom(n - 1) * tr_b.deriv * rho_r[n - 1] * om[n - 1] * om[n - 1] -
        grid.geom(0) * tr_a.deriv * rho_r[0] * om[0] * om[0];
  }

  // Endpoint-in-time term.
  auto value_integral = [&](const RadialField& snap) {
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i)
      f[i] = truncation_eval(kind, Delta, snap.rho[i]).value * om[i] * om[i];
    return radial_integral(grid, f);
  };
  const double time_term =
      value_integral(traj.snapshots.back()) - value_integral(traj.snapshots.front());

  IdentityReport rep;
  rep.lhs = eps * time_trapezoid(traj, lhs_k);
  rep.rhs = -time_term - time_trapezoid(traj, u_bracket_k) -
            time_trapezoid(traj, interior_k) +
            2.0 * time_trapezoid(traj, cross_k) -
            2.0 * eps * time_trapezoid(traj, visc_cross_k) +
            eps * time_trapezoid(traj, visc_bracket_k);
  rep.residual = rep.lhs - rep.rhs;
  return rep;
}

namespace {

// Shared plumbing for the two weak residual operations: time-trapezoid of a
// per-snapshot spatial integral.
template <class PerSnapshot>
double space_time_integral(const Trajectory& traj, PerSnapshot&& per) {
  std::vector<double> vals(traj.snapshots.size());
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k)
    vals[k] = per(traj.snapshots[k]);
  return time_trapezoid(traj, vals);
}

}  // namespace

WeakResidual weak_residual_continuity(const Trajectory& traj,
                                      const TestFunction& phi) {
  const RadialGrid& grid = traj.grid;
  const std::size_t n = grid.size();

  WeakResidual out;
  out.euler = space_time_integral(traj, [&](const RadialField& snap) {
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double r = grid.node(i);
      f[i] = snap.rho[i] * phi.dt(snap.t, r) + snap.m[i] * phi.dr(snap.t, r);
    }
    return radial_integral(grid, f);
  });
  {
    const auto& init = traj.snapshots.front();
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i)
      f[i] = init.rho[i] * phi.value(0.0, grid.node(i));
    out.euler += radial_integral(grid, f);
  }
  out.viscous_rhs =
      traj.params.eps * space_time_integral(traj, [&](const RadialField& snap) {
        const std::vector<double> rho_r = radial_derivative(grid, snap.rho);
        std::vector<double> f(n);
        for (std::size_t i = 0; i < n; ++i)
          f[i] = rho_r[i] * phi.dr(snap.t, grid.node(i));
        return radial_integral(grid, f);
      });
  out.delta_pressure = 0.0;
  out.defect = out.euler - out.viscous_rhs;
  return out;
}

WeakResidual weak_residual_momentum(const Trajectory& traj,
                                    const TestFunction& phi) {
  for (const auto& snap : traj.snapshots) {
    if (std::abs(phi.origin_value(snap.t)) > 1e-12)
      throw AdmissibilityError(
          "weak_residual_momentum: test function does not vanish at the "
          "origin");
  }
  const RadialGrid& grid = traj.grid;
  const std::size_t n = grid.size();
  const int ndim = grid.n_dim();
  const GasLaw& law = traj.law;

  WeakResidual out;
  out.euler = space_time_integral(traj, [&](const RadialField& snap) {
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double r = grid.node(i);
      const double u = snap.m[i] / snap.rho[i];
      const double pr = phi.dr(snap.t, r);
      const double pv = phi.value(snap.t, r);
      f[i] = snap.m[i] * phi.dt(snap.t, r) + snap.m[i] * u * pr +
             pressure_polytropic(snap.rho[i], law) *
                 (pr + (ndim - 1) * pv / r);
    }
    return radial_integral(grid, f);
  });
  {
    const auto& init = traj.snapshots.front();
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i)
      f[i] = init.m[i] * phi.value(0.0, grid.node(i));
    out.euler += radial_integral(grid, f);
  }
  out.delta_pressure =
      space_time_integral(traj, [&](const RadialField& snap) {
        std::vector<double> f(n);
        for (std::size_t i = 0; i < n; ++i) {
          const double r = grid.node(i);
          f[i] = traj.params.delta * snap.rho[i] * snap.rho[i] *
                 (phi.dr(snap.t, r) + (ndim - 1) * phi.value(snap.t, r) / r);
        }
        return radial_integral(grid, f);
      });
  // Viscous side: eps iint ((r^(n-1) m)_r phi_r + (n-1)/r (r^(n-1) m)_r phi),
  // integrated in plain dr.
  out.viscous_rhs =
      traj.params.eps * space_time_integral(traj, [&](const RadialField& snap) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = grid.geom(i) * snap.m[i];
        const std::vector<double> v_r = radial_derivative(grid, v);
        std::vector<double> f(n);
        for (std::size_t i = 0; i < n; ++i) {
          const double r = grid.node(i);
          f[i] = v_r[i] * phi.dr(snap.t, r) +
                 (ndim - 1) / r * v_r[i] * phi.value(snap.t, r);
        }
        return weighted_integral_from(grid, f, grid.inner_radius(), 0);
      });
  // Inner-boundary traces (the test function need not vanish at r = a).
  const double a = grid.inner_radius();
  out.boundary_pressure =
      grid.geom(0) * space_time_integral(traj, [&](const RadialField& snap) {
        return pressure(snap.rho[0], law) * phi.value(snap.t, a);
      });
  out.boundary_viscous =
      traj.params.eps * space_time_integral(traj, [&](const RadialField& snap) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = grid.geom(i) * snap.m[i];
        return one_sided_derivative(grid, v, -1) * phi.value(snap.t, a);
      });
  out.defect = out.euler + out.delta_pressure + out.boundary_pressure -
               out.boundary_viscous - out.viscous_rhs;
  return out;
}

EquivalenceReport multiD_equivalence(const Trajectory& traj,
                                     const MultiDTestFunction& phi, int j,
                                     int polar_order, int azimuth_order,
                                     std::size_t snapshot_stride,
                                     std::size_t node_stride) {
  const RadialGrid& grid = traj.grid;
  const int ndim = grid.n_dim();
  if (j < 0 || j >= ndim)
    throw DomainError("multiD_equivalence: component outside dimension");
  const SphereRule sphere(ndim, polar_order, azimuth_order);

  // Subsampled node and snapshot index sets, shared by both sides.
  std::vector<std::size_t> nodes;
  for (std::size_t i = 0; i < grid.size(); i += std::max<std::size_t>(1, node_stride))
    nodes.push_back(i);
  if (nodes.back() != grid.size() - 1) nodes.push_back(grid.size() - 1);
  std::vector<std::size_t> snaps;
  for (std::size_t k = 0; k < traj.snapshots.size();
       k += std::max<std::size_t>(1, snapshot_stride))
    snaps.push_back(k);
  if (snaps.back() != traj.snapshots.size() - 1)
    snaps.push_back(traj.snapshots.size() - 1);

  // Sphere moments of phi at (t, r): zeta, zeta_t, zeta_r, and the plain
  // gradient-component moment.
  struct Moments {
    double zeta, zeta_t, zeta_r, grad_j;
  };
  auto moments_at = [&](double t, double r) {
    Moments mm{0.0, 0.0, 0.0, 0.0};
    for (std::size_t q = 0; q < sphere.points().size(); ++q) {
      const auto& y = sphere.points()[q];
      const double w = sphere.weights()[q];
      const std::array<double, 3> x{r * y[0], r * y[1], r * y[2]};
      const double val = phi.value(t, x);
      const auto g = phi.gradient(t, x);
      mm.zeta += w * y[j] * val;
      mm.zeta_t += w * y[j] * phi.dt(t, x);
      mm.zeta_r += w * y[j] * (g[0] * y[0] + g[1] * y[1] + g[2] * y[2]);
      mm.grad_j += w * g[j];
    }
    return mm;
  };

  auto trapz = [&](const std::vector<double>& ts, const std::vector<double>& vs) {
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < ts.size(); ++k)
      s += 0.5 * (vs[k] + vs[k + 1]) * (ts[k + 1] - ts[k]);
    return s;
  };

  std::vector<double> ts(snaps.size());
  std::vector<double> multi_k(snaps.size()), radial_k(snaps.size());
  double multi_init = 0.0, radial_init = 0.0;

  for (std::size_t kk = 0; kk < snaps.size(); ++kk) {
    const auto& snap = traj.snapshots[snaps[kk]];
    ts[kk] = snap.t;
    double multi_sum = 0.0, radial_sum = 0.0, init_m = 0.0, init_r = 0.0;
    double prev_r = 0.0, prev_multi = 0.0, prev_radial = 0.0, prev_im = 0.0,
           prev_ir = 0.0;
    const auto& init_snap = traj.snapshots.front();
    for (std::size_t ii = 0; ii < nodes.size(); ++ii) {
      const std::size_t i = nodes[ii];
      const double r = grid.node(i);
      const double geom = grid.geom(i);
      const Moments mm = moments_at(snap.t, r);
      const double u = snap.m[i] / snap.rho[i];
      const double p = pressure_polytropic(snap.rho[i], traj.law);
      // Multi-dimensional momentum weak integrand for component j.
      const double multi_here =
          (snap.rho[i] * u * mm.zeta_t + snap.rho[i] * u * u * mm.zeta_r +
           p * mm.grad_j) *
          geom;
      // Radial weak integrand tested against zeta.
      const double radial_here =
          (snap.m[i] * mm.zeta_t + snap.m[i] * u * mm.zeta_r +
           p * (mm.zeta_r + (ndim - 1) * mm.zeta / r)) *
          geom;
      double im_here = 0.0, ir_here = 0.0;
      if (kk == 0) {
        const Moments m0 = moments_at(0.0, r);
        im_here = init_snap.m[i] * m0.zeta * geom;
        ir_here = im_here;
      }
      if (ii > 0) {
        const double h = r - prev_r;
        multi_sum += 0.5 * (multi_here + prev_multi) * h;
        radial_sum += 0.5 * (radial_here + prev_radial) * h;
        if (kk == 0) {
          init_m += 0.5 * (im_here + prev_im) * h;
          init_r += 0.5 * (ir_here + prev_ir) * h;
        }
      }
      prev_r = r;
      prev_multi = multi_here;
      prev_radial = radial_here;
      prev_im = im_here;
      prev_ir = ir_here;
    }
    multi_k[kk] = multi_sum;
    radial_k[kk] = radial_sum;
    if (kk == 0) {
      multi_init = init_m;
      radial_init = init_r;
    }
  }

  EquivalenceReport rep;
  rep.multi_d = trapz(ts, multi_k) + multi_init;
  rep.radial = trapz(ts, radial_k) + radial_init;
  rep.difference = std::abs(rep.multi_d - rep.radial);
  return rep;
}

FitResult loglog_fit(const std::vector<double>& eps,
                     const std::vector<double>& values) {
  if (eps.size() != values.size() || eps.size() < 2)
    throw DomainError("loglog_fit: need >= 2 points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double x = std::log(eps[i]);
    const double y = std::log(std::max(values[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  FitResult fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

std::vector<TestFunction> residual_test_functions(const HarnessSpec& spec,
                                                  double t_final) {
  const SmoothCutoff chi(spec.tf_r_plateau, spec.tf_r_cut);
  const SmoothCutoff psi(spec.tf_t_plateau_frac * t_final,
                         spec.tf_t_cut_frac * t_final);
  std::vector<TestFunction> tfs{cutoff_test_function(chi, psi),
                                linear_test_function(chi, psi),
                                quadratic_test_function(chi, psi)};
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> plateau_dist(0.5, 0.9);
  for (int i = 0; i < spec.n_random_test_functions; ++i) {
    const double plateau = plateau_dist(rng);
    const double cut = std::min(spec.tf_r_cut, plateau + 0.25);
    TestFunction tf =
        linear_test_function(SmoothCutoff(plateau, cut), psi);
    tf.name = "random" + std::to_string(i);
    tfs.push_back(std::move(tf));
  }
  return tfs;
}

namespace {

std::string delta_suffix(double Delta) {
  std::ostringstream s;
  s.precision(2);
  s << std::fixed << Delta;
  return s.str();
}

}  // namespace

std::map<std::string, double> run_quantities(const Trajectory& traj,
                                             const HarnessSpec& spec,
                                             double t_final) {
  std::map<std::string, double> q;
  const EnergyReport er = energy_report(traj, spec.energy_tol);
  q["energy_margin"] =
      (er.sup_combined - er.initial_energy) / std::max(er.initial_energy, 1e-300);
  q["dissipation_total"] = er.dissipation_total;

  const SmoothCutoff omega = lemma_cutoff();
  q["higher_integrability"] = higher_integrability(traj, omega).total();

  const auto tfs = residual_test_functions(spec, t_final);
  const WeakResidual wc = weak_residual_continuity(traj, tfs[0]);
  q["euler_residual_continuity"] = std::abs(wc.euler);
  q["viscous_rhs_continuity"] = std::abs(wc.viscous_rhs);
  q["defect_continuity"] = std::abs(wc.defect);

  const WeakResidual wm = weak_residual_momentum(traj, tfs[1]);
  q["euler_residual_momentum"] = std::abs(wm.euler);
  q["viscous_rhs_momentum"] = std::abs(wm.viscous_rhs);
  q["defect_momentum"] = std::abs(wm.defect);
  q["boundary_pressure_momentum"] = std::abs(wm.boundary_pressure);
  q["boundary_viscous_momentum"] = std::abs(wm.boundary_viscous);

  const WeakResidual wq = weak_residual_momentum(traj, tfs[2]);
  q["euler_residual_momentum_quadratic"] = std::abs(wq.euler);
  q["viscous_rhs_momentum_quadratic"] = std::abs(wq.viscous_rhs);

  for (std::size_t i = 3; i < tfs.size(); ++i) {
    const WeakResidual wr = weak_residual_momentum(traj, tfs[i]);
    q["euler_residual_momentum_" + tfs[i].name] = std::abs(wr.euler);
    q["viscous_rhs_momentum_" + tfs[i].name] = std::abs(wr.viscous_rhs);
  }

  for (double Delta : spec.delta_thresholds) {
    const ViscousDerivativeReport vd =
        viscous_derivative_integrals(traj, Delta, omega);
    const std::string suffix = delta_suffix(Delta);
    q["lemma_grad_scaled_d" + suffix] =
        vd.small_density_gradient / vd.small_density_shape;
    q["lemma_loggrad_scaled_d" + suffix] =
        vd.log_density_gradient / vd.log_density_shape;
  }

  const double bn = std::pow(traj.params.b, traj.grid.n_dim());
  q["rho_cubed_scaled"] = rho_cubed_integral(traj, traj.params.a) /
                          (1.0 + bn / traj.params.eps);
  q["tail_density_sup"] = tail_density_sup(traj, traj.grid.n_dim() - 1, 1.0);
  return q;
}

bool EstimateReport::all_pass() const {
  for (const auto& lv : levels)
    if (!lv.ok) return false;
  for (const auto& c : criteria)
    if (!c.pass) return false;
  return true;
}

const SweepQuantity* EstimateReport::find(const std::string& id) const {
  for (const auto& qt : quantities)
    if (qt.id == id) return &qt;
  return nullptr;
}

EstimateReport sweep_report(const SweepProblem& problem, int jobs) {
  if (problem.levels.empty())
    throw DomainError("sweep_report: no levels");
  for (std::size_t i = 0; i + 1 < problem.levels.size(); ++i)
    if (!(problem.levels[i + 1].eps < problem.levels[i].eps))
      throw DomainError("sweep_report: eps list must be strictly decreasing");

  EstimateReport report;
  report.levels.resize(problem.levels.size());

  auto run_level = [&](std::size_t idx) {
    LevelResult& lv = report.levels[idx];
    const SweepLevel& level = problem.levels[idx];
    try {
      lv.params = schedule(level.eps, problem.n_dim, problem.m0_budget,
                           problem.law, problem.schedule_options);
      const GasLaw law = problem.law.with_delta(lv.params.delta);
      const RadialGrid grid =
          make_truncated_grid(lv.params.a, lv.params.b, problem.n_dim,
                              level.n_log, level.n_uniform);
      const InitialData init = prepare_initial_data(
          problem.rho_raw(lv.params), problem.m_raw(lv.params), lv.params,
          grid, law, problem.init_options);
      lv.run = run(init, level.solver, lv.params, law, grid);
      if (!lv.run.ok) {
        lv.ok = false;
        lv.error = lv.run.error;
        return;
      }
      lv.quantities = run_quantities(lv.run.trajectory, problem.harness,
                                     level.solver.t_final);
      lv.ok = true;
    } catch (const Error& err) {
      lv.ok = false;
      lv.error = err.what();
    }
  };

  const int workers = std::max(1, jobs);
  for (std::size_t begin = 0; begin < problem.levels.size();
       begin += static_cast<std::size_t>(workers)) {
    std::vector<std::future<void>> batch;
    const std::size_t end =
        std::min(problem.levels.size(), begin + static_cast<std::size_t>(workers));
    for (std::size_t i = begin; i < end; ++i)
      batch.push_back(std::async(std::launch::async, run_level, i));
    for (auto& f : batch) f.get();
  }

  // Assemble per-quantity eps series over the successful levels.
  std::vector<std::size_t> ok_levels;
  for (std::size_t i = 0; i < report.levels.size(); ++i)
    if (report.levels[i].ok) ok_levels.push_back(i);
  if (!ok_levels.empty()) {
    for (const auto& [id, unused] : report.levels[ok_levels[0]].quantities) {
      SweepQuantity qt;
      qt.id = id;
      for (std::size_t i : ok_levels) {
        qt.eps.push_back(report.levels[i].params.eps);
        qt.values.push_back(report.levels[i].quantities.at(id));
      }
      if (qt.values.size() >= 2) {
        qt.fit = loglog_fit(qt.eps, qt.values);
        const double mx = *std::max_element(qt.values.begin(), qt.values.end());
        const double mn = *std::min_element(qt.values.begin(), qt.values.end());
        qt.max_min_ratio = mn > 0.0 ? mx / mn
                                    : std::numeric_limits<double>::infinity();
      }
      report.quantities.push_back(std::move(qt));
    }
  }

  // Sweep-level criteria.
  const HarnessSpec& spec = problem.harness;
  auto add = [&](std::string id, bool pass, double value, double threshold,
                 std::string detail = {}) {
    report.criteria.push_back(
        CriterionResult{std::move(id), pass, value, threshold, std::move(detail)});
  };

  {
    double worst = 0.0;
    bool pass = ok_levels.size() == report.levels.size();
    for (std::size_t i : ok_levels) {
      const double margin = report.levels[i].quantities.at("energy_margin");
      worst = std::max(worst, margin);
      if (margin > spec.energy_tol) pass = false;
    }
    add("energy_estimate", pass, worst, spec.energy_tol);
  }
  if (const auto* hi = report.find("higher_integrability");
      hi && hi->values.size() >= 2) {
    add("higher_integrability_ratio", hi->max_min_ratio < spec.hi_ratio_max,
        hi->max_min_ratio, spec.hi_ratio_max);
    // Trend at the small-eps end: the coarse end of the sweep is deep in the
    // viscous regime, so the tail slope is the meaningful growth indicator.
    const std::size_t k = hi->values.size();
    const double tail =
        std::log(std::max(hi->values[k - 1], 1e-300) /
                 std::max(hi->values[k - 2], 1e-300)) /
        std::log(hi->eps[k - 1] / hi->eps[k - 2]);
    add("higher_integrability_trend", tail >= spec.trend_slope_min, tail,
        spec.trend_slope_min,
        "tail log-log slope; full fit " + std::to_string(hi->fit.slope));
  }
  if (const auto* vm = report.find("viscous_rhs_momentum");
      vm && vm->values.size() >= 2) {
    add("viscous_rhs_momentum_decay",
        vm->fit.slope > spec.viscous_decay_slope_min, vm->fit.slope,
        spec.viscous_decay_slope_min);
  }
  for (const char* id :
       {"euler_residual_continuity", "euler_residual_momentum"}) {
    if (const auto* qt = report.find(id); qt && qt->values.size() >= 2) {
      add(std::string(id) + "_decay", qt->fit.slope > spec.euler_decay_slope_min,
          qt->fit.slope, spec.euler_decay_slope_min);
    }
  }
  if (!ok_levels.empty()) {
    const auto& finest = report.levels[ok_levels.back()].quantities;
    auto defect_fraction = [&](const char* defect, const char* euler,
                               const char* viscous) {
      const double d = finest.at(defect);
      const double scale =
          std::max(finest.at(euler) + finest.at(viscous), 1e-300);
      return d / scale;
    };
    const double fc = defect_fraction("defect_continuity",
                                      "euler_residual_continuity",
                                      "viscous_rhs_continuity");
    add("weak_defect_continuity", fc <= spec.defect_fraction_max, fc,
        spec.defect_fraction_max, "finest-eps defect / residual scale");
    const double fm =
        defect_fraction("defect_momentum", "euler_residual_momentum",
                        "viscous_rhs_momentum");
    add("weak_defect_momentum", fm <= spec.defect_fraction_max, fm,
        spec.defect_fraction_max, "finest-eps defect / residual scale");
  }
  for (double Delta : spec.delta_thresholds) {
    for (const char* base : {"lemma_grad_scaled_d", "lemma_loggrad_scaled_d"}) {
      const std::string id = base + delta_suffix(Delta);
      const auto* qt = report.find(id);
      if (!qt || qt->values.size() < 2) continue;
      const double first = std::max(qt->values.front(), 1e-300);
      const double growth =
          *std::max_element(qt->values.begin(), qt->values.end()) / first;
      const bool pass = growth < spec.lemma_growth_max &&
                        qt->fit.slope >= spec.trend_slope_min;
      add(id + "_bounded", pass, growth, spec.lemma_growth_max,
          "max/first ratio; trend slope " + std::to_string(qt->fit.slope));
    }
  }
  return report;
}

std::string estimate_report_csv(const EstimateReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "quantity,eps,value\n";
  for (const auto& qt : report.quantities)
    for (std::size_t i = 0; i < qt.eps.size(); ++i)
      out << qt.id << ',' << qt.eps[i] << ',' << qt.values[i] << '\n';
  return out.str();
}

}  // namespace spheuler
