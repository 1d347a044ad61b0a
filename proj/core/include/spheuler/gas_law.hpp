#ifndef SPHEULER_GAS_LAW_HPP_
#define SPHEULER_GAS_LAW_HPP_

#include <cmath>

#include "spheuler/errors.hpp"

namespace spheuler {

/// Polytropic gas law p(rho) = kappa
/// rho^gamma with the normalization kappa = (gamma-1)^2 / (4 gamma), plus an
/// optional quadratic artificial-pressure term delta rho^2.
///
/// Derived constants:
///   theta  = (gamma-1)/2          (sonic exponent)
///   lambda = (3-gamma)/(2(gamma-1))  (entropy kernel exponent)
struct GasLaw {
  double gamma = 2.0;
  double kappa = 1.0 / 8.0;
  double theta = 0.5;
  double lambda_kernel = 0.5;
  double delta = 0.0;

  static GasLaw make(double gamma, double delta = 0.0) {
    if (!(gamma > 1.0)) throw DomainError("GasLaw: gamma must exceed 1");
    if (!(delta >= 0.0)) throw DomainError("GasLaw: delta must be >= 0");
    GasLaw law;
    law.gamma = gamma;
    law.kappa = (gamma - 1.0) * (gamma - 1.0) / (4.0 * gamma);
    law.theta = 0.5 * (gamma - 1.0);
    law.lambda_kernel = (3.0 - gamma) / (2.0 * (gamma - 1.0));
    law.delta = delta;
    return law;
  }

  GasLaw with_delta(double new_delta) const { return make(gamma, new_delta); }
};

/// pow with fast paths for the small integer and half-integer exponents the
/// gas law produces for gamma in {2, 3}.
inline double pow_fast(double x, double p) {
  if (p == 2.0) return x * x;
  if (p == 1.0) return x;
  if (p == 3.0) return x * x * x;
  if (p == 0.0) return 1.0;
  return std::pow(x, p);
}

/// p(rho) = kappa rho^gamma, the polytropic part only.
inline double pressure_polytropic(double rho, const GasLaw& law) {
  if (!(rho >= 0.0)) throw DomainError("pressure: negative density");
  return law.kappa * pow_fast(rho, law.gamma);
}

/// p_delta(rho) = kappa rho^gamma + delta rho^2.
inline double pressure(double rho, const GasLaw& law) {
  if (!(rho >= 0.0)) throw DomainError("pressure: negative density");
  return law.kappa * pow_fast(rho, law.gamma) + law.delta * rho * rho;
}

/// p_delta'(rho); the square of the sound speed.
inline double pressure_derivative(double rho, const GasLaw& law) {
  if (!(rho >= 0.0)) throw DomainError("pressure_derivative: negative density");
  return law.kappa * law.gamma * pow_fast(rho, law.gamma - 1.0) +
         2.0 * law.delta * rho;
}

inline double sound_speed(double rho, const GasLaw& law) {
  return std::sqrt(pressure_derivative(rho, law));
}

/// h_delta(rho) = kappa rho^gamma / (gamma-1) + delta rho^2.
inline double internal_energy(double rho, const GasLaw& law) {
  if (!(rho >= 0.0)) throw DomainError("internal_energy: negative density");
  return law.kappa * pow_fast(rho, law.gamma) / (law.gamma - 1.0) +
         law.delta * rho * rho;
}

inline double internal_energy_derivative(double rho, const GasLaw& law) {
  if (!(rho >= 0.0))
    throw DomainError("internal_energy_derivative: negative density");
  return law.kappa * law.gamma * pow_fast(rho, law.gamma - 1.0) /
             (law.gamma - 1.0) +
         2.0 * law.delta * rho;
}

/// h_delta''(rho) = kappa gamma rho^(gamma-2) + 2 delta.
inline double internal_energy_second(double rho, const GasLaw& law) {
  if (!(rho >= 0.0))
    throw DomainError("internal_energy_second: negative density");
  return law.kappa * law.gamma * pow_fast(rho, law.gamma - 2.0) +
         2.0 * law.delta;
}

/// Energy of rho relative to the base state rho_bar,
///   hbar(rho, rho_bar) = h(rho) - h(rho_bar) - h'(rho_bar)(rho - rho_bar).
/// Non-negative by convexity, zero iff rho == rho_bar.
inline double relative_internal_energy(double rho, double rho_bar,
                                       const GasLaw& law) {
  if (!(rho >= 0.0) || !(rho_bar >= 0.0))
    throw DomainError("relative_internal_energy: negative density");
  return internal_energy(rho, law) - internal_energy(rho_bar, law) -
         internal_energy_derivative(rho_bar, law) * (rho - rho_bar);
}

/// Smallest constant M (times a 1.05 safety factor) such that
///   rho + rho^gamma <= M (hbar(rho, rho_bar) + 1)
/// holds on a dense sample of [0, rho_max].
double dominating_constant(double rho_max, double rho_bar, const GasLaw& law,
                           long n_samples = 100000);

}  // namespace spheuler

#endif  // SPHEULER_GAS_LAW_HPP_
