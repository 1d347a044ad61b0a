#ifndef SPHEULER_FIELD_HPP_
#define SPHEULER_FIELD_HPP_

#include <vector>

#include "spheuler/gas_law.hpp"
#include "spheuler/grid.hpp"

namespace spheuler {

/// Running totals of the three viscosity-weighted dissipation integrals,
///   eps * int int h''(rho) rho_r^2  r^(n-1) dr dt,
///   eps * int int rho u_r^2         r^(n-1) dr dt,
///   eps * int int (n-1) rho u^2/r^2 r^(n-1) dr dt.
struct DissipationTotals {
  double density_gradient = 0.0;
  double velocity_gradient = 0.0;
  double geometric = 0.0;

  double total() const { return density_gradient + velocity_gradient + geometric; }
};

/// Discrete state at one instant: density and radial momentum per node, plus
/// the cumulative dissipation accounting up to this time.
struct RadialField {
  double t = 0.0;
  std::vector<double> rho;
  std::vector<double> m;
  DissipationTotals dissipation;
  /// Smallest density seen on [0, t]; positive for every valid field.
  double density_floor_seen = 0.0;

  std::vector<double> velocity() const;
};

/// Kinetic plus relative internal energy,
///   E = int ( m^2/(2 rho) + hbar(rho, rho_bar) ) r^(n-1) dr.
double discrete_energy(const RadialGrid& grid, std::span<const double> rho,
                       std::span<const double> m, double rho_bar,
                       const GasLaw& law);

double discrete_energy(const RadialGrid& grid, const RadialField& field,
                       double rho_bar, const GasLaw& law);

/// Throws DomainError if any density is at or below `floor`, or if the field
/// has non-finite entries or mismatched sizes.
void validate_field(const RadialGrid& grid, const RadialField& field,
                    double floor);

}  // namespace spheuler

#endif  // SPHEULER_FIELD_HPP_
