#include "spheuler/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spheuler/errors.hpp"

namespace spheuler {

namespace {

inline double minmod(double x, double y) {
  if (x > 0.0 && y > 0.0) return std::min(x, y);
  if (x < 0.0 && y < 0.0) return std::max(x, y);
  return 0.0;
}

// Thomas solve of a strictly diagonally dominant tridiagonal system.
// sub[i] couples row i with i-1, sup[i] with i+1. Overwrites rhs with x.
void solve_tridiagonal(std::vector<double>& sub, std::vector<double>& diag,
                       std::vector<double>& sup, std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (diag[i - 1] == 0.0)
      throw NumericalError("tridiagonal solve: zero pivot", 0.0);
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  if (diag[n - 1] == 0.0)
    throw NumericalError("tridiagonal solve: zero pivot", 0.0);
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;)
    rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

// One-sided second-order first-derivative coefficients at the inner end.
std::array<double, 3> inner_stencil(const RadialGrid& grid) {
  const double h1 = grid.spacing(0);
  const double h2 = grid.spacing(1);
  return {-(2.0 * h1 + h2) / (h1 * (h1 + h2)), (h1 + h2) / (h1 * h2),
          -h1 / (h2 * (h1 + h2))};
}

}  // namespace

Stepper::Stepper(const SolverConfig& config, const ViscousParams& params,
                 const GasLaw& law, const RadialGrid& grid)
    : config_(config), params_(params), law_(law), grid_(grid) {
  if (!(config_.cfl > 0.0 && config_.cfl <= 1.0))
    throw ConfigError("Stepper: CFL must lie in (0, 1]");
  if (grid_.n_dim() != params_.n_dim)
    throw ConfigError("Stepper: grid and params disagree on n_dim");
  if (law_.delta != params_.delta)
    throw ConfigError("Stepper: gas law delta differs from scheduled delta");
}

double Stepper::stable_dt(const RadialField& state) const {
  const std::size_t n = grid_.size();
  double dt = std::numeric_limits<double>::infinity();
  double h_min = std::numeric_limits<double>::infinity();
  double alpha_prev =
      std::abs(state.m[0] / state.rho[0]) + sound_speed(state.rho[0], law_);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double alpha_next = std::abs(state.m[i + 1] / state.rho[i + 1]) +
                              sound_speed(state.rho[i + 1], law_);
    const double alpha = std::max(alpha_prev, alpha_next);
    const double h = grid_.spacing(i);
    h_min = std::min(h_min, h);
    if (alpha > 1e-14) dt = std::min(dt, config_.cfl * h / alpha);
    alpha_prev = alpha_next;
  }
  dt = std::min(dt, config_.viscous_dt_factor * h_min * h_min / params_.eps);
  if (!(dt > 0.0) || !std::isfinite(dt))
    dt = config_.t_final;  // degenerate (motionless) state
  return dt;
}

void Stepper::explicit_convection(const RadialField& state,
                                  std::vector<double>& rho_star,
                                  std::vector<double>& m_star,
                                  double dt) const {
  const std::size_t n = grid_.size();
  const auto& rho = state.rho;
  const auto& m = state.m;

  auto& slope_rho = ws_.slope_rho;
  auto& slope_m = ws_.slope_m;
  if (config_.second_order) {
    slope_rho.assign(n, 0.0);
    slope_m.assign(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double hm = grid_.spacing(i - 1);
      const double hp = grid_.spacing(i);
      slope_rho[i] =
          minmod((rho[i] - rho[i - 1]) / hm, (rho[i + 1] - rho[i]) / hp);
      slope_m[i] = minmod((m[i] - m[i - 1]) / hm, (m[i + 1] - m[i]) / hp);
    }
  }

  // Interface fluxes F = (m, m^2/rho + p_delta).
  auto& f1 = ws_.f1;
  auto& f2 = ws_.f2;
  f1.resize(n - 1);
  f2.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double rho_l = rho[i], m_l = m[i], rho_r = rho[i + 1], m_r = m[i + 1];
    if (config_.second_order) {
      const double dl = grid_.midpoint(i) - grid_.node(i);
      const double dr = grid_.midpoint(i) - grid_.node(i + 1);
      rho_l += slope_rho[i] * dl;
      m_l += slope_m[i] * dl;
      rho_r += slope_rho[i + 1] * dr;
      m_r += slope_m[i + 1] * dr;
      rho_l = std::max(rho_l, config_.density_floor);
      rho_r = std::max(rho_r, config_.density_floor);
    }
    const double u_l = m_l / rho_l, u_r = m_r / rho_r;
    const double alpha = std::max(std::abs(u_l) + sound_speed(rho_l, law_),
                                  std::abs(u_r) + sound_speed(rho_r, law_));
    f1[i] = 0.5 * (m_l + m_r) - 0.5 * alpha * (rho_r - rho_l);
    f2[i] = 0.5 * (m_l * u_l + pressure(rho_l, law_) + m_r * u_r +
                   pressure(rho_r, law_)) -
            0.5 * alpha * (m_r - m_l);
  }

  rho_star = rho;
  m_star = m;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double gl = grid_.geom_mid(i - 1);
    const double gr = grid_.geom_mid(i);
    const double scale = dt / (grid_.geom(i) * grid_.dual_width(i));
    rho_star[i] -= scale * (gr * f1[i] - gl * f1[i - 1]);
    // The pressure at the node is subtracted inside each flux bracket, which
    // folds the geometric source into the difference and keeps uniform
    // states exact fixed points on any grid.
    const double p_i = pressure(rho[i], law_);
    m_star[i] -= scale * (gr * (f2[i] - p_i) - gl * (f2[i - 1] - p_i));
  }
}

void Stepper::implicit_density(std::vector<double>& rho, double dt) const {
  const std::size_t n = grid_.size();
  const double eps = params_.eps;
  auto& sub = ws_.sub;
  auto& diag = ws_.diag;
  auto& sup = ws_.sup;
  auto& rhs = ws_.rhs;
  sub.assign(n - 2, 0.0);
  diag.assign(n - 2, 0.0);
  sup.assign(n - 2, 0.0);
  rhs.assign(n - 2, 0.0);

  // Unknowns w_1 .. w_{n-2} with w = r^(n-1) rho. Row i (1-based interior):
  //   w_i - dt eps [g_{i+1/2}(rho_{i+1}-rho_i)/h_i
  //               - g_{i-1/2}(rho_i-rho_{i-1})/h_{i-1}] / dual_i = w*_i.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double A = dt * eps * grid_.geom_mid(i - 1) /
                     (grid_.spacing(i - 1) * grid_.dual_width(i));
    const double B = dt * eps * grid_.geom_mid(i) /
                     (grid_.spacing(i) * grid_.dual_width(i));
    const std::size_t k = i - 1;
    sub[k] = -A / grid_.geom(i - 1);
    diag[k] = 1.0 + (A + B) / grid_.geom(i);
    sup[k] = -B / grid_.geom(i + 1);
    rhs[k] = grid_.geom(i) * rho[i];
  }

  // Neumann row at a: the one-sided stencil of rho_r(a) vanishes. Eliminate
  // w_0 from the first interior row.
  const auto st = inner_stencil(grid_);
  const double e1 = -(st[1] / grid_.geom(1)) * (grid_.geom(0) / st[0]);
  const double e2 = -(st[2] / grid_.geom(2)) * (grid_.geom(0) / st[0]);
  diag[0] += sub[0] * e1;
  sup[0] += sub[0] * e2;
  sub[0] = 0.0;

  // Dirichlet at b.
  const double w_outer = grid_.geom(n - 1) * params_.rho_bar;
  rhs[n - 3] -= sup[n - 3] * w_outer;
  sup[n - 3] = 0.0;

  solve_tridiagonal(sub, diag, sup, rhs);

  for (std::size_t i = 1; i + 1 < n; ++i) rho[i] = rhs[i - 1] / grid_.geom(i);
  const double w0 = e1 * rhs[0] + e2 * rhs[1];
  rho[0] = w0 / grid_.geom(0);
  rho[n - 1] = params_.rho_bar;
}

void Stepper::implicit_momentum(std::vector<double>& m, double dt) const {
  const std::size_t n = grid_.size();
  const double eps = params_.eps;
  auto& sub = ws_.sub;
  auto& diag = ws_.diag;
  auto& sup = ws_.sup;
  auto& rhs = ws_.rhs;
  sub.assign(n - 2, 0.0);
  diag.assign(n - 2, 0.0);
  sup.assign(n - 2, 0.0);
  rhs.assign(n - 2, 0.0);

  // Unknowns v_1 .. v_{n-2}, v = r^(n-1) m, with v = 0 at both ends:
  //   v_i - dt eps [ v_rr - (n-1)/r v_r ]_i = v*_i.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hm = grid_.spacing(i - 1);
    const double hp = grid_.spacing(i);
    const double l2 = 2.0 / (hm * (hm + hp));
    const double c2 = -2.0 / (hm * hp);
    const double r2 = 2.0 / (hp * (hm + hp));
    const double l1 = -hp / (hm * (hm + hp));
    const double c1 = (hp - hm) / (hm * hp);
    const double r1 = hm / (hp * (hm + hp));
    const double k = (grid_.n_dim() - 1) / grid_.node(i);
    const std::size_t j = i - 1;
    sub[j] = -dt * eps * (l2 - k * l1);
    diag[j] = 1.0 - dt * eps * (c2 - k * c1);
    sup[j] = -dt * eps * (r2 - k * r1);
    rhs[j] = grid_.geom(i) * m[i];
  }
  // Dirichlet v = 0 at both boundaries: nothing to move to the rhs.
  sub[0] = 0.0;
  sup[n - 3] = 0.0;

  solve_tridiagonal(sub, diag, sup, rhs);

  for (std::size_t i = 1; i + 1 < n; ++i) m[i] = rhs[i - 1] / grid_.geom(i);
  m[0] = 0.0;
  m[n - 1] = 0.0;
}

void Stepper::accumulate_dissipation(const RadialField& before,
                                     RadialField& after, double dt) const {
  const std::size_t n = grid_.size();
  auto& rho_mid = ws_.rho_mid;
  auto& m_mid = ws_.m_mid;
  auto& u = ws_.u;
  rho_mid.resize(n);
  m_mid.resize(n);
  u.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    rho_mid[i] = 0.5 * (before.rho[i] + after.rho[i]);
    m_mid[i] = 0.5 * (before.m[i] + after.m[i]);
    u[i] = m_mid[i] / rho_mid[i];
  }
  radial_derivative_into(grid_, rho_mid, ws_.rho_r);
  radial_derivative_into(grid_, u, ws_.u_r);

  // Fused trapezoid accumulation of the three integrands.
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  double p1 = 0.0, p2 = 0.0, p3 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = grid_.geom(i);
    const double r = grid_.node(i);
    const double c1 =
        g * internal_energy_second(rho_mid[i], law_) * ws_.rho_r[i] * ws_.rho_r[i];
    const double c2 = g * rho_mid[i] * ws_.u_r[i] * ws_.u_r[i];
    const double c3 =
        g * (grid_.n_dim() - 1) * rho_mid[i] * u[i] * u[i] / (r * r);
    if (i > 0) {
      const double h = grid_.spacing(i - 1);
      s1 += 0.5 * (p1 + c1) * h;
      s2 += 0.5 * (p2 + c2) * h;
      s3 += 0.5 * (p3 + c3) * h;
    }
    p1 = c1;
    p2 = c2;
    p3 = c3;
  }
  const double w = dt * params_.eps;
  after.dissipation.density_gradient += w * s1;
  after.dissipation.velocity_gradient += w * s2;
  after.dissipation.geometric += w * s3;
}

RadialField Stepper::advance(const RadialField& state, double dt) const {
  const std::size_t n = grid_.size();
  RadialField next;
  next.t = state.t + dt;
  next.dissipation = state.dissipation;

  explicit_convection(state, next.rho, next.m, dt);
  implicit_density(next.rho, dt);
  implicit_momentum(next.m, dt);

  next.density_floor_seen = state.density_floor_seen > 0.0
                                ? state.density_floor_seen
                                : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(next.rho[i] > config_.density_floor) || !std::isfinite(next.rho[i]))
      throw SolverError("density floor breached", next.t, static_cast<int>(i),
                        grid_.node(i));
    next.density_floor_seen = std::min(next.density_floor_seen, next.rho[i]);
  }
  accumulate_dissipation(state, next, dt);
  return next;
}

RadialField step(const RadialField& state, const SolverConfig& config,
                 const ViscousParams& params, const GasLaw& law,
                 const RadialGrid& grid) {
  Stepper stepper(config, params, law, grid);
  return stepper.advance(state, stepper.stable_dt(state));
}

RunResult run(const InitialData& init, const SolverConfig& config,
              const ViscousParams& params, const GasLaw& law,
              const RadialGrid& grid) {
  RunResult result;
  Trajectory& traj = result.trajectory;
  traj.grid = grid;
  traj.params = params;
  traj.law = law;

  std::vector<double> times = config.snapshot_times;
  if (times.empty()) {
    const int k = std::max(2, config.n_snapshots);
    times.resize(k);
    for (int i = 0; i < k; ++i)
      times[i] = config.t_final * static_cast<double>(i) / (k - 1);
  }
  std::sort(times.begin(), times.end());

  RadialField state;
  state.t = 0.0;
  state.rho = init.rho0;
  state.m = init.m0;
  state.density_floor_seen = init.c_eps;
  traj.initial_energy = discrete_energy(grid, state, params.rho_bar, law);

  Stepper stepper(config, params, law, grid);
  std::size_t next_snap = 0;
  // t = 0 snapshot (always present; for t_final = 0 it is the whole run).
  if (!times.empty() && times[0] <= 0.0) {
    traj.snapshots.push_back(state);
    ++next_snap;
  } else {
    traj.snapshots.push_back(state);
  }

  try {
    while (state.t < config.t_final - 1e-14) {
      double dt = stepper.stable_dt(state);
      dt = std::min(dt, config.t_final - state.t);
      if (next_snap < times.size())
        dt = std::min(dt, times[next_snap] - state.t);
      if (!(dt > 0.0)) {
        ++next_snap;
        continue;
      }
      state = stepper.advance(state, dt);
      ++traj.steps_taken;
      while (next_snap < times.size() &&
             state.t >= times[next_snap] - 1e-14) {
        traj.snapshots.push_back(state);
        ++next_snap;
      }
    }
  } catch (const SolverError& err) {
    traj.snapshots.push_back(state);
    traj.c_eps = state.density_floor_seen;
    result.ok = false;
    result.error = err.what();
    result.error_time = err.time();
    result.error_node = err.node();
    return result;
  } catch (const NumericalError& err) {
    traj.snapshots.push_back(state);
    traj.c_eps = state.density_floor_seen;
    result.ok = false;
    result.error = err.what();
    result.error_time = state.t;
    return result;
  }

  if (traj.snapshots.back().t < config.t_final - 1e-14)
    traj.snapshots.push_back(state);
  traj.c_eps = state.density_floor_seen;
  result.ok = true;
  return result;
}

}  // namespace spheuler
