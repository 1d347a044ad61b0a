#ifndef SPHEULER_SOLVER_HPP_
#define SPHEULER_SOLVER_HPP_

#include <string>
#include <vector>

#include "spheuler/field.hpp"
#include "spheuler/gas_law.hpp"
#include "spheuler/grid.hpp"
#include "spheuler/initial_data.hpp"
#include "spheuler/schedule.hpp"

namespace spheuler {

struct SolverConfig {
  double cfl = 0.4;                 ///< convective CFL number, in (0, 1]
  double viscous_dt_factor = 1000.0; ///< dt cap at factor * min(h)^2 / eps
  double t_final = 0.5;
  int n_snapshots = 101;            ///< used when snapshot_times is empty
  std::vector<double> snapshot_times;
  bool second_order = false;        ///< minmod reconstruction of the fluxes
  double density_floor = 1e-13;     ///< breach is an error, not a clamp
};

/// One step of the scheme: convection and pressure gradient explicit with a
/// local Lax-Friedrichs flux weighted by r^(n-1) (the geometric pressure
/// source folds into the flux difference, so uniform states are exact fixed
/// points), both viscous operators implicit via tridiagonal solves in the
/// variables r^(n-1) rho and r^(n-1) m. Boundary conditions are imposed on
/// the implicit solves: rho_r = m = 0 at a (one-sided second-order stencil),
/// rho = rho_bar and m = 0 at b.
class Stepper {
 public:
  Stepper(const SolverConfig& config, const ViscousParams& params,
          const GasLaw& law, const RadialGrid& grid);

  /// Largest stable step from this state.
  double stable_dt(const RadialField& state) const;

  /// Advances by dt, updating the dissipation accumulators with a
  /// midpoint-state quadrature of the three viscosity-weighted integrands.
  RadialField advance(const RadialField& state, double dt) const;

  const RadialGrid& grid() const { return grid_; }

 private:
  void explicit_convection(const RadialField& state,
                           std::vector<double>& rho_star,
                           std::vector<double>& m_star, double dt) const;
  void implicit_density(std::vector<double>& rho, double dt) const;
  void implicit_momentum(std::vector<double>& m, double dt) const;
  void accumulate_dissipation(const RadialField& before, RadialField& after,
                              double dt) const;

  SolverConfig config_;
  ViscousParams params_;
  GasLaw law_;
  RadialGrid grid_;

  // Scratch buffers reused across steps. A stepper serves one sequential
  // run; it is not shared between threads.
  struct Workspace {
    std::vector<double> slope_rho, slope_m, f1, f2;
    std::vector<double> sub, diag, sup, rhs;
    std::vector<double> rho_mid, m_mid, u, rho_r, u_r, integrand;
  };
  mutable Workspace ws_;
};

/// Single spec-level step with the stable dt.
RadialField step(const RadialField& state, const SolverConfig& config,
                 const ViscousParams& params, const GasLaw& law,
                 const RadialGrid& grid);

struct Trajectory {
  RadialGrid grid;
  ViscousParams params;
  GasLaw law;
  double initial_energy = 0.0;
  double c_eps = 0.0;  ///< density floor achieved over the whole run
  std::vector<RadialField> snapshots;
  long steps_taken = 0;
};

struct RunResult {
  Trajectory trajectory;
  bool ok = false;
  std::string error;
  double error_time = 0.0;
  int error_node = -1;
};

/// Integrates up to t_final, recording snapshots at the requested times
/// (time steps are clipped so snapshot times are hit exactly). A step
/// failure aborts the run with the partial trajectory attached.
RunResult run(const InitialData& init, const SolverConfig& config,
              const ViscousParams& params, const GasLaw& law,
              const RadialGrid& grid);

}  // namespace spheuler

#endif  // SPHEULER_SOLVER_HPP_
