#include "spheuler/initial_data.hpp"

#include <algorithm>
#include <cmath>

#include "spheuler/errors.hpp"

namespace spheuler {

namespace {

// Standard compactly supported mollifier profile on (-1, 1).
double mollifier_kernel(double x) {
  const double x2 = x * x;
  if (x2 >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - x2));
}

// Discretely normalized mollification of a raw profile, sampled at r.
// Normalizing per evaluation point keeps constants exactly constant.
double mollify_at(const Profile& f, double r, double width) {
  if (width <= 0.0) return f(r);
  constexpr int kSamples = 64;
  const double h = 2.0 * width / kSamples;
  double num = 0.0, den = 0.0;
  for (int j = 0; j <= kSamples; ++j) {
    const double s = r - width + j * h;
    if (s <= 0.0) continue;
    const double w = mollifier_kernel((s - r) / width);
    num += w * f(s);
    den += w;
  }
  return num / den;
}

// C-infinity step: 0 for x <= 0, 1 for x >= 1.
double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double e0 = std::exp(-1.0 / x);
  const double e1 = std::exp(-1.0 / (1.0 - x));
  return e0 / (e0 + e1);
}

}  // namespace

Profile constant_profile(double value) {
  return [value](double) { return value; };
}

Profile gaussian_bump_profile(double base, double amplitude, double center,
                              double width) {
  return [=](double r) {
    const double z = (r - center) / width;
    return base + amplitude * std::exp(-z * z);
  };
}

InitialData prepare_initial_data(const Profile& rho_raw, const Profile& m_raw,
                                 const ViscousParams& params,
                                 const RadialGrid& grid, const GasLaw& law,
                                 const InitialDataOptions& opts) {
  const double a = grid.inner_radius();
  const double b = grid.outer_radius();
  if (opts.mollify_width > 0.25 * (b - a))
    throw ConfigError("prepare_initial_data: mollification width exceeds (b-a)/4");
  if (opts.blend_width <= 0.0 || opts.blend_width > 0.25 * (b - a))
    throw ConfigError("prepare_initial_data: blend width outside (0, (b-a)/4]");

  const std::size_t n = grid.size();
  InitialData init;
  init.mollification_width = opts.mollify_width;
  init.rho0.resize(n);
  init.m0.resize(n);

  std::vector<double> rho_sampled(n), m_sampled(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = grid.node(i);
    rho_sampled[i] = rho_raw(r);
    m_sampled[i] = m_raw(r);
    init.rho0[i] = mollify_at(rho_raw, r, opts.mollify_width);
    init.m0[i] = mollify_at(m_raw, r, opts.mollify_width);
    if (!std::isfinite(init.rho0[i]) || !std::isfinite(init.m0[i]) ||
        init.rho0[i] < 0.0)
      throw DataError("prepare_initial_data: raw profiles non-finite or negative");
  }

  for (double v : rho_sampled)
    if (!std::isfinite(v)) throw DataError("prepare_initial_data: raw density non-finite");

  // Density lift. Applied before blending so the Dirichlet value at b stays
  // exactly rho_bar.
  const double lift = std::max(params.rho_bar, opts.lift_floor);
  for (std::size_t i = 0; i < n; ++i)
    init.rho0[i] = std::max(init.rho0[i], lift);

  // Boundary blending. Fields are constant on the inner half of each layer,
  // so the one-sided stencils of rho_r(a), (r^(n-1) m)_r(a) and every
  // compatibility expression at b vanish identically.
  const double w = opts.blend_width;
  const double flat = 0.5 * w;
  // Inner layer: flatten rho to its value at a + w, force m to 0.
  double rho_a = 0.0;
  {
    // value of the mollified+lifted density at the flattening anchor
    const double anchor = a + w;
    rho_a = std::max(mollify_at(rho_raw, anchor, opts.mollify_width), lift);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double r = grid.node(i);
    if (r >= a + w) break;
    const double s = smooth_step((r - (a + flat)) / (w - flat));
    init.rho0[i] = rho_a + s * (init.rho0[i] - rho_a);
    init.m0[i] = s * init.m0[i];
  }
  // Outer layer: blend to (rho_bar, 0).
  for (std::size_t i = n; i-- > 0;) {
    const double r = grid.node(i);
    if (r <= b - w) break;
    const double s = smooth_step(((b - flat) - r) / (w - flat));
    init.rho0[i] = params.rho_bar + s * (init.rho0[i] - params.rho_bar);
    init.m0[i] = s * init.m0[i];
  }

  init.c_eps = *std::min_element(init.rho0.begin(), init.rho0.end());
  if (!(init.c_eps > 0.0))
    throw DataError("prepare_initial_data: prepared density not positive");

  init.energy = discrete_energy(grid, init.rho0, init.m0, params.rho_bar, law);
  if (!std::isfinite(init.energy))
    throw DataError("prepare_initial_data: prepared data has non-finite energy");
  // Raw energy on the same grid, with the raw density lifted away from
  // vacuum only where needed to evaluate m^2/rho.
  {
    std::vector<double> rho_l = rho_sampled;
    for (double& v : rho_l) v = std::max(v, 1e-300);
    init.energy_raw =
        discrete_energy(grid, rho_l, m_sampled, params.rho_bar, law);
  }
  if (!std::isfinite(init.energy_raw))
    throw DataError("prepare_initial_data: raw data has non-finite energy");
  if (std::abs(init.energy - init.energy_raw) >
      opts.energy_tol * (1.0 + init.energy_raw))
    throw DataError("prepare_initial_data: preparation drifted the energy "
                    "beyond the configured tolerance");
  return init;
}

std::array<double, 3> compatibility_residuals(const InitialData& init,
                                              const RadialGrid& grid,
                                              const ViscousParams& params,
                                              const GasLaw& law) {
  const std::size_t n = grid.size();
  std::vector<double> gm(n), grho_r_flux(n), flux2(n);
  std::vector<double> rho_r = radial_derivative(grid, init.rho0);
  for (std::size_t i = 0; i < n; ++i) {
    gm[i] = grid.geom(i) * init.m0[i];
    grho_r_flux[i] = grid.geom(i) * rho_r[i];
    flux2[i] = init.m0[i] * init.m0[i] / init.rho0[i] +
               pressure(init.rho0[i], law);
  }
  const double da = one_sided_derivative(grid, gm, -1);

  const double m_r_b = one_sided_derivative(grid, init.m0, +1);
  const double grho_rr_b = one_sided_derivative(grid, grho_r_flux, +1);
  const double db1 = grid.geom(n - 1) * m_r_b - params.eps * grho_rr_b;

  const double flux2_r_b = one_sided_derivative(grid, flux2, +1);
  const double gm_r_b = one_sided_derivative(grid, gm, +1);
  const double db2 = grid.geom(n - 1) * flux2_r_b - params.eps * gm_r_b;
  return {da, db1, db2};
}

}  // namespace spheuler
