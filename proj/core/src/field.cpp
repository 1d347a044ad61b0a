#include "spheuler/field.hpp"

#include <cmath>
#include <string>

namespace spheuler {

std::vector<double> RadialField::velocity() const {
  std::vector<double> u(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) u[i] = m[i] / rho[i];
  return u;
}

double discrete_energy(const RadialGrid& grid, std::span<const double> rho,
                       std::span<const double> m, double rho_bar,
                       const GasLaw& law) {
  if (rho.size() != grid.size() || m.size() != grid.size())
    throw DomainError("discrete_energy: size mismatch");
  std::vector<double> e(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    e[i] = 0.5 * m[i] * m[i] / rho[i] +
           relative_internal_energy(rho[i], rho_bar, law);
  }
  return radial_integral(grid, e);
}

double discrete_energy(const RadialGrid& grid, const RadialField& field,
                       double rho_bar, const GasLaw& law) {
  return discrete_energy(grid, field.rho, field.m, rho_bar, law);
}

void validate_field(const RadialGrid& grid, const RadialField& field,
                    double floor) {
  if (field.rho.size() != grid.size() || field.m.size() != grid.size())
    throw DomainError("validate_field: size mismatch");
  for (std::size_t i = 0; i < field.rho.size(); ++i) {
    if (!std::isfinite(field.rho[i]) || !std::isfinite(field.m[i]))
      throw DomainError("validate_field: non-finite entry at node " +
                        std::to_string(i));
    if (!(field.rho[i] > floor))
      throw DomainError("validate_field: density " +
                        std::to_string(field.rho[i]) + " at node " +
                        std::to_string(i) + " below floor");
  }
}

}  // namespace spheuler
