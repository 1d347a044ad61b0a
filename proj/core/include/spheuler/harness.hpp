#ifndef SPHEULER_HARNESS_HPP_
#define SPHEULER_HARNESS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spheuler/solver.hpp"
#include "spheuler/test_function.hpp"

namespace spheuler {

/// Discrete form of the uniform energy estimate: at every snapshot the
/// energy plus the accumulated viscosity-weighted dissipation stays within
/// tolerance of the initial energy.
struct EnergyReport {
  double initial_energy = 0.0;
  double sup_energy = 0.0;
  double dissipation_total = 0.0;
  double sup_combined = 0.0;  ///< max over snapshots of energy + dissipation
  double tol = 1e-4;
  bool pass = false;
};

EnergyReport energy_report(const Trajectory& traj, double tol = 1e-4);

/// Space-time integral of rho |u|^3 + rho^(gamma+theta) against the cutoff,
/// split into its two integrand parts (the total is their exact sum).
struct HigherIntegrability {
  double velocity_part = 0.0;
  double density_part = 0.0;
  double total() const { return velocity_part + density_part; }
};

HigherIntegrability higher_integrability(const Trajectory& traj,
                                         const SmoothCutoff& omega);

/// int_r^b rho(t_k, y)^gamma y^l dy at one snapshot.
double tail_density_integral(const Trajectory& traj, std::size_t snapshot,
                             int l, double r);
/// Supremum of the tail integral over all snapshots.
double tail_density_sup(const Trajectory& traj, int l, double r);

/// int_0^T int_r^b rho^3 y^(n-1) dy dt.
double rho_cubed_integral(const Trajectory& traj, double r);

/// Viscosity-weighted gradient integrals over the low-density region
/// {rho < Delta}, with the bound shapes they are measured against.
struct ViscousDerivativeReport {
  double small_density_gradient = 0.0;  ///< eps iint rho_r^2 1 om^2 r^(n-1)
  double log_density_gradient = 0.0;    ///< eps iint rho_r^2/rho 1 om^2 r^(n-1)
  double small_density_shape = 0.0;
  double log_density_shape = 0.0;
};

ViscousDerivativeReport viscous_derivative_integrals(const Trajectory& traj,
                                                     double Delta,
                                                     const SmoothCutoff& omega);

/// Convex truncations of the density used by the derivative estimates.
enum class TruncationKind { kQuadratic, kLog };

/// Both sides of the truncated-entropy identity for the continuity equation,
/// evaluated discretely. The residual |lhs - rhs| is a pure discretization
/// self-consistency measure for solver output and equals the integrated
/// equation residual for arbitrary smooth fields. Boundary flux brackets at
/// r = a, b are retained (the cutoff need not vanish at the finite outer
/// radius).
struct IdentityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
};

IdentityReport continuity_identity_residual(const Trajectory& traj,
                                            TruncationKind kind, double Delta,
                                            const SmoothCutoff& omega);

/// Weak-form residual of one equation: the Euler-side integral, the
/// viscosity right-hand side it must match, the artificial-pressure
/// discrepancy, and the inner-boundary trace terms that appear because the
/// test function need not vanish at r = a (they decay with a(eps)). The
/// defect closes the exact finite-domain identity,
///   euler + delta_pressure + boundary_pressure
///     = viscous_rhs + boundary_viscous + defect,
/// so it measures pure discretization error.
struct WeakResidual {
  double euler = 0.0;
  double viscous_rhs = 0.0;
  double delta_pressure = 0.0;
  double boundary_pressure = 0.0;  ///< a^(n-1) int p_delta(rho(t,a)) phi(t,a)
  double boundary_viscous = 0.0;   ///< eps int (r^(n-1) m)_r|_a phi(t,a)
  double defect = 0.0;
};

WeakResidual weak_residual_continuity(const Trajectory& traj,
                                      const TestFunction& phi);
/// Requires phi(t, 0) = 0; measured violation above 1e-12 raises
/// AdmissibilityError.
WeakResidual weak_residual_momentum(const Trajectory& traj,
                                    const TestFunction& phi);

/// Multi-dimensional vs radial momentum weak form, evaluated by matched
/// product quadratures. The strides subsample snapshots and nodes (both
/// sides use identical sample sets).
struct EquivalenceReport {
  double multi_d = 0.0;
  double radial = 0.0;
  double difference = 0.0;
};

EquivalenceReport multiD_equivalence(const Trajectory& traj,
                                     const MultiDTestFunction& phi, int j,
                                     int polar_order = 24,
                                     int azimuth_order = 48,
                                     std::size_t snapshot_stride = 1,
                                     std::size_t node_stride = 1);

/// Least-squares fit of log(value) against log(eps).
struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
};
FitResult loglog_fit(const std::vector<double>& eps,
                     const std::vector<double>& values);

/// ---- sweep orchestration ----

struct HarnessSpec {
  std::vector<double> delta_thresholds = {0.1, 0.25};
  double energy_tol = 1e-4;
  double tf_r_plateau = 0.55;
  double tf_r_cut = 0.85;
  double tf_t_plateau_frac = 0.5;  ///< fraction of t_final
  double tf_t_cut_frac = 0.9;
  int sphere_polar = 24;
  int sphere_azimuth = 48;
  int n_random_test_functions = 0;  ///< extra randomized momentum families
  std::uint64_t seed = 0;           ///< seeds only the randomized sampling
  // criterion thresholds
  double hi_ratio_max = 10.0;
  double trend_slope_min = -0.1;  ///< no growth as eps decreases
  double viscous_decay_slope_min = 0.2;
  double euler_decay_slope_min = 0.2;
  double defect_fraction_max = 0.1;
  double lemma_growth_max = 10.0;
};

/// Test functions used by the residual sweep: the plain cutoff (continuity),
/// the linear family with nonzero origin slope, the quadratic family, and
/// any seeded random variations of the linear family.
std::vector<TestFunction> residual_test_functions(const HarnessSpec& spec,
                                                  double t_final);

/// Every harness quantity for one completed run, keyed by quantity id.
std::map<std::string, double> run_quantities(const Trajectory& traj,
                                             const HarnessSpec& spec,
                                             double t_final);

struct SweepLevel {
  double eps = 0.0;
  int n_log = 400;
  int n_uniform = 400;
  SolverConfig solver;
};

struct SweepProblem {
  GasLaw law;  ///< delta is overridden per level by the schedule
  int n_dim = 3;
  double m0_budget = 10.0;
  ScheduleOptions schedule_options;
  /// Profiles depend on the scheduled parameters (far-field density varies
  /// with eps).
  std::function<Profile(const ViscousParams&)> rho_raw;
  std::function<Profile(const ViscousParams&)> m_raw;
  InitialDataOptions init_options;
  std::vector<SweepLevel> levels;  ///< eps strictly decreasing
  HarnessSpec harness;
};

struct LevelResult {
  ViscousParams params;
  RunResult run;
  std::map<std::string, double> quantities;
  bool ok = false;
  std::string error;
};

struct SweepQuantity {
  std::string id;
  std::vector<double> eps;
  std::vector<double> values;
  FitResult fit;
  double max_min_ratio = 0.0;
};

struct CriterionResult {
  std::string id;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct EstimateReport {
  std::vector<LevelResult> levels;
  std::vector<SweepQuantity> quantities;
  std::vector<CriterionResult> criteria;

  bool all_pass() const;
  const SweepQuantity* find(const std::string& id) const;
};

/// Runs the solver once per level (in parallel up to `jobs`), evaluates every
/// harness integral, fits the eps-trends, and applies the sweep criteria.
/// A failed level is recorded and the remaining levels proceed.
EstimateReport sweep_report(const SweepProblem& problem, int jobs = 1);

/// CSV: one row per eps per quantity.
std::string estimate_report_csv(const EstimateReport& report);

}  // namespace spheuler

#endif  // SPHEULER_HARNESS_HPP_
