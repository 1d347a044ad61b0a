#include "spheuler/gas_law.hpp"

#include <algorithm>

namespace spheuler {

double dominating_constant(double rho_max, double rho_bar, const GasLaw& law,
                           long n_samples) {
  if (!(rho_max > 0.0)) throw DomainError("dominating_constant: rho_max <= 0");
  if (!(rho_bar >= 0.0) || rho_bar > 100.0)
    throw DomainError("dominating_constant: rho_bar outside [0, 100]");
  if (n_samples < 2) throw DomainError("dominating_constant: need >= 2 samples");

  const double step = rho_max / static_cast<double>(n_samples);
  double worst = 0.0;
  for (long i = 0; i <= n_samples; ++i) {
    const double rho = static_cast<double>(i) * step;
    const double num = rho + std::pow(rho, law.gamma);
    const double den = relative_internal_energy(rho, rho_bar, law) + 1.0;
    worst = std::max(worst, num / den);
  }
  return 1.05 * worst;
}

}  // namespace spheuler
