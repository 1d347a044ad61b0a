#ifndef SPHEULER_INITIAL_DATA_HPP_
#define SPHEULER_INITIAL_DATA_HPP_

#include <array>
#include <functional>
#include <vector>

#include "spheuler/field.hpp"
#include "spheuler/gas_law.hpp"
#include "spheuler/grid.hpp"
#include "spheuler/schedule.hpp"

namespace spheuler {

using Profile = std::function<double(double)>;

struct InitialDataOptions {
  double mollify_width = 0.02;
  double blend_width = 0.05;   ///< width of each boundary blend layer
  double lift_floor = 0.0;     ///< extra density floor on top of rho_bar
  double energy_tol = 0.25;    ///< relative drift allowed vs the raw energy
};

/// Prepared initial state: mollified, boundary-blended, floor-lifted, and
/// compatible with the mixed boundary conditions on the discrete stencils.
struct InitialData {
  std::vector<double> rho0;
  std::vector<double> m0;
  double mollification_width = 0.0;
  double c_eps = 0.0;      ///< density floor actually achieved
  double energy = 0.0;     ///< discrete energy of the prepared data
  double energy_raw = 0.0; ///< energy of the raw profiles on the same grid
};

/// Residuals of the discrete compatibility conditions, all of which vanish
/// for prepared data:
///   [0]  (r^(n-1) m)_r at r = a,
///   [1]  r^(n-1) m_r - eps (r^(n-1) rho_r)_r at r = b,
///   [2]  r^(n-1) (m^2/rho + p_delta(rho))_r - eps (r^(n-1) m)_r at r = b.
std::array<double, 3> compatibility_residuals(const InitialData& init,
                                              const RadialGrid& grid,
                                              const ViscousParams& params,
                                              const GasLaw& law);

/// Mollifies the raw profiles, blends them to the boundary values over the
/// configured layers (constant near both ends, which makes every discrete
/// compatibility stencil vanish identically), lifts the density to
/// max(rho_bar, lift_floor), and records the achieved floor and energies.
InitialData prepare_initial_data(const Profile& rho_raw, const Profile& m_raw,
                                 const ViscousParams& params,
                                 const RadialGrid& grid, const GasLaw& law,
                                 const InitialDataOptions& opts = {});

/// Named initial profiles for configs and tests.
Profile constant_profile(double value);
Profile gaussian_bump_profile(double base, double amplitude, double center,
                              double width);

}  // namespace spheuler

#endif  // SPHEULER_INITIAL_DATA_HPP_
