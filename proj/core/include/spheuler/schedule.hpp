#ifndef SPHEULER_SCHEDULE_HPP_
#define SPHEULER_SCHEDULE_HPP_

#include <array>
#include <string>
#include <vector>

#include "spheuler/gas_law.hpp"

namespace spheuler {

/// Names of the six constraint addends, in evaluation order:
///   eps b^n / a,
///   delta |log a|,
///   delta |log a| b^n / eps,
///   rho_bar^theta |log a|,
///   rho_bar^gamma b^n,
///   sqrt(eps) / a.
inline constexpr std::array<const char*, 6> kConstraintNames = {
    "eps_bn_over_a",      "delta_log_a",      "delta_log_a_bn_over_eps",
    "rho_bar_theta_log_a", "rho_bar_gamma_bn", "sqrt_eps_over_a"};

/// Complete parameter set for one viscosity level.
struct ViscousParams {
  double eps = 0.0;
  double delta = 0.0;
  double rho_bar = 0.0;
  double a = 0.0;
  double b = 0.0;
  int n_dim = 3;
  double m0_budget = 10.0;
  std::array<double, 6> constraint_values{};
};

/// One admissible instantiation of the coupled smallness conditions:
///   a = eps^(1/3), b = eps^(-1/(4n)), delta = eps^3,
///   rho_bar = min(eps^(1/(2 gamma)), |log eps|^(-2/theta)).
/// The exponents are overridable; verify_constraints is the gate.
struct ScheduleOptions {
  double a_exponent = 1.0 / 3.0;
  double b_exponent = 0.25;  ///< b = eps^(-b_exponent / n)
  double delta_exponent = 3.0;
};

struct ConstraintReport {
  std::array<double, 6> addends{};
  double total = 0.0;
  /// rho_bar^gamma b^n + (delta/eps) b^n, the convergence-theorem combination.
  double convergence_combo = 0.0;
  bool pass = false;
};

/// Evaluates every addend of the budget for the given parameters. Pure.
ConstraintReport verify_constraints(const ViscousParams& params,
                                    const GasLaw& law);

/// Produces the coupled parameters for one eps level and checks them against
/// the budget. Throws ScheduleError (carrying the worst addend) on failure.
ViscousParams schedule(double eps, int n_dim, double m0_budget,
                       const GasLaw& law, const ScheduleOptions& opts = {});

/// CSV table: one row per eps (eps, a, b, delta, rho_bar, six addends,
/// total, pass).
std::string schedule_table_csv(const std::vector<ViscousParams>& rows,
                               const GasLaw& law);

}  // namespace spheuler

#endif  // SPHEULER_SCHEDULE_HPP_
