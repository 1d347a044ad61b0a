// Acceptance suite: end-to-end verification of the solver and the estimate
// harness at desk scale. Each check prints one PASS/FAIL line; the process
// exits nonzero if any check fails.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spheuler/entropy.hpp"
#include "spheuler/harness.hpp"
#include "spheuler/report.hpp"
#include "spheuler/runner.hpp"

using namespace spheuler;

namespace {

int failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
  std::printf("[ %s ] %-4s %s\n", pass ? "PASS" : "FAIL", id.c_str(),
              detail.c_str());
  if (!pass) ++failures;
  std::fflush(stdout);
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

// ---------------------------------------------------------------- C01
void entropy_kernel_correctness() {
  const EntropyKernel k3(GasLaw::make(3.0));
  const EntropyPair p = k3.pair(1.0, 1.0);
  const double closed_err = std::max(std::abs(p.eta - 4.0 / 3.0) / (4.0 / 3.0),
                                     std::abs(p.q - 2.0) / 2.0);

  double worst_fd = 0.0;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> rho_d(0.1, 10.0);
  std::uniform_real_distribution<double> u_d(-3.0, 3.0);
  const double h = 1e-5;
  for (double gamma : {2.0, 3.0}) {
    const EntropyKernel kernel(GasLaw::make(gamma));
    for (int i = 0; i < 500; ++i) {
      const double rho = rho_d(rng);
      const double u = u_d(rng);
      const double m = rho * u;
      const auto g = kernel.gradient(rho, u);
      const double fd_rho = (kernel.pair(rho + h, m / (rho + h)).eta -
                             kernel.pair(rho - h, m / (rho - h)).eta) /
                            (2.0 * h);
      const double fd_m = (kernel.pair(rho, (m + h) / rho).eta -
                           kernel.pair(rho, (m - h) / rho).eta) /
                          (2.0 * h);
      worst_fd = std::max(worst_fd,
                          std::abs(g[0] - fd_rho) / (1.0 + std::abs(g[0])));
      worst_fd =
          std::max(worst_fd, std::abs(g[1] - fd_m) / (1.0 + std::abs(g[1])));
    }
  }
  report("C01", closed_err < 1e-10 && worst_fd < 1e-5,
         "entropy kernel: closed-form rel err " + fmt(closed_err) +
             " (< 1e-10), gradient-vs-FD " + fmt(worst_fd) + " (< 1e-5)");
}

// ---------------------------------------------------------------- C02
void hessian_identity() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> rho_d(0.1, 10.0);
  std::uniform_real_distribution<double> u_d(-3.0, 3.0);
  std::uniform_real_distribution<double> xi_d(-1.0, 1.0);
  double worst = 0.0;
  for (double gamma : {2.0, 3.0}) {
    const GasLaw law = GasLaw::make(gamma);
    for (int i = 0; i < 500; ++i) {
      const double rho = rho_d(rng);
      const double u = u_d(rng);
      const double m = rho * u;
      double x0 = xi_d(rng), x1 = xi_d(rng);
      const double norm = std::hypot(x0, x1);
      if (norm < 1e-3) continue;
      x0 /= norm;
      x1 /= norm;
      const double form = physical_entropy_hessian_form(rho, u, {x0, x1}, law);
      const double h = 1e-4 * rho;
      const double fd =
          (physical_entropy(rho + h * x0, m + h * x1, law) -
           2.0 * physical_entropy(rho, m, law) +
           physical_entropy(rho - h * x0, m - h * x1, law)) /
          (h * h);
      worst = std::max(worst, std::abs(form - fd) / (1.0 + std::abs(form)));
    }
  }
  report("C02", worst < 1e-6,
         "mechanical-entropy Hessian closed form vs FD: rel err " +
             fmt(worst) + " (< 1e-6)");
}

// ---------------------------------------------------------------- C03
void inequality_suite() {
  bool pass = true;
  std::string detail;
  for (double gamma : {2.0, 3.0}) {
    const EntropyKernel kernel(GasLaw::make(gamma));
    EntropySampleSpec coarse;
    coarse.n_rho = 200;
    coarse.n_u = 200;
    EntropySampleSpec fine = coarse;
    fine.n_rho = 400;
    fine.n_u = 400;
    const auto r1 = verify_entropy_bounds(coarse, 0.1, kernel, 1);
    const auto r2 = verify_entropy_bounds(fine, 0.1, kernel, 2);
    double worst_stab = 0.0;
    double sign_violation = 0.0;
    for (std::size_t i = 0; i < r1.size(); ++i) {
      if (r1[i].sign_condition) {
        sign_violation = std::max(sign_violation, r1[i].max_violation);
        sign_violation = std::max(sign_violation, r2[i].max_violation);
      } else {
        worst_stab = std::max(
            worst_stab, std::abs(r2[i].empirical_m - r1[i].empirical_m) /
                            r1[i].empirical_m);
      }
    }
    if (!(sign_violation <= 1e-8 && worst_stab < 0.05)) pass = false;
    detail += "gamma=" + fmt(gamma) + ": sign " + fmt(sign_violation) +
              " (<= 1e-8), M drift " + fmt(worst_stab) + " (< 0.05);  ";
  }
  report("C03", pass, "entropy inequality suite: " + detail);
}

// shared reference sweep -------------------------------------------------
SweepProblem reference_problem() {
  SweepProblem problem;
  problem.law = GasLaw::make(2.0);
  problem.n_dim = 3;
  problem.m0_budget = 10.0;
  problem.rho_raw = [](const ViscousParams& p) {
    return gaussian_bump_profile(p.rho_bar, 1.0, 0.5, 0.15);
  };
  problem.m_raw = [](const ViscousParams&) { return constant_profile(0.0); };
  const double eps_list[3] = {1e-1, 1e-2, 1e-3};
  const int n_log[3] = {2500, 3000, 9000};
  const int n_uni[3] = {1500, 3000, 9000};
  for (int i = 0; i < 3; ++i) {
    SweepLevel level;
    level.eps = eps_list[i];
    level.n_log = n_log[i];
    level.n_uniform = n_uni[i];
    level.solver.t_final = 0.5;
    level.solver.n_snapshots = 201;
    level.solver.cfl = 0.4;
    problem.levels.push_back(level);
  }
  problem.harness.energy_tol = 1e-4;
  return problem;
}

const CriterionResult* find_criterion(const EstimateReport& rep,
                                      const std::string& id) {
  for (const auto& c : rep.criteria)
    if (c.id == id) return &c;
  return nullptr;
}

// ---------------------------------------------------------------- C04
void energy_estimate(const EstimateReport& sweep) {
  bool pass = true;
  double worst_margin = 0.0;
  for (const auto& lv : sweep.levels) {
    if (!lv.ok) {
      pass = false;
      continue;
    }
    worst_margin = std::max(worst_margin, lv.quantities.at("energy_margin"));
  }
  if (worst_margin > 1e-4) pass = false;

  // constant state: exact zero pattern
  const GasLaw law0 = GasLaw::make(2.0);
  const ViscousParams params = schedule(1e-2, 3, 10.0, law0);
  const GasLaw law = law0.with_delta(params.delta);
  const RadialGrid grid = make_truncated_grid(params.a, params.b, 3, 800, 800);
  const auto init = prepare_initial_data(constant_profile(params.rho_bar),
                                         constant_profile(0.0), params, grid,
                                         law);
  SolverConfig cfg;
  cfg.t_final = 0.5;
  cfg.n_snapshots = 51;
  const auto rr = run(init, cfg, params, law, grid);
  const EnergyReport er = rr.ok ? energy_report(rr.trajectory, 1e-4)
                                : EnergyReport{};
  const double const_scale =
      std::max({std::abs(er.sup_energy), std::abs(er.dissipation_total),
                std::abs(er.initial_energy)});
  if (!rr.ok || const_scale > 1e-10) pass = false;

  report("C04", pass,
         "energy estimate: sweep margin " + fmt(worst_margin) +
             " (<= 1e-4), constant-state pattern " + fmt(const_scale) +
             " (<= 1e-10)");
}

// ---------------------------------------------------------------- C05
void constant_fixed_point() {
  const GasLaw law0 = GasLaw::make(2.0);
  const ViscousParams params = schedule(1e-2, 3, 10.0, law0);
  const GasLaw law = law0.with_delta(params.delta);
  const RadialGrid grid = make_truncated_grid(params.a, params.b, 3, 1000, 1000);
  const auto init = prepare_initial_data(constant_profile(params.rho_bar),
                                         constant_profile(0.0), params, grid,
                                         law);
  SolverConfig cfg;
  cfg.t_final = 1.0;
  cfg.n_snapshots = 11;
  const auto rr = run(init, cfg, params, law, grid);
  double drift = rr.ok ? 0.0 : 1.0;
  if (rr.ok) {
    for (const auto& snap : rr.trajectory.snapshots)
      for (std::size_t i = 0; i < grid.size(); ++i)
        drift = std::max(drift, std::abs(snap.rho[i] - params.rho_bar) +
                                     std::abs(snap.m[i]));
  }
  report("C05", drift <= 1e-10,
         "constant state preserved over T=1: max node drift " + fmt(drift) +
             " (<= 1e-10)");
}

// ---------------------------------------------------------------- C06
void scheduler_feasibility() {
  bool pass = true;
  double worst_total = 0.0;
  for (double gamma : {2.0, 3.0}) {
    const GasLaw law = GasLaw::make(gamma);
    for (int n : {2, 3}) {
      double prev_ratio = 1e300;
      for (int k = 0; k <= 60; ++k) {
        const double eps = std::pow(10.0, -1.0 - 5.0 * k / 60.0);
        try {
          const ViscousParams p = schedule(eps, n, 10.0, law);
          const ConstraintReport rep = verify_constraints(p, law);
          worst_total = std::max(worst_total, rep.total);
          for (double v : rep.addends)
            if (!(v <= 10.0)) pass = false;
          if (!rep.pass) pass = false;
          const double ratio = std::sqrt(eps) / p.a;
          if (!(ratio < prev_ratio)) pass = false;
          prev_ratio = ratio;
        } catch (const Error&) {
          pass = false;
        }
      }
    }
  }
  report("C06", pass,
         "schedule feasible on eps in [1e-6, 1e-1], budget total max " +
             fmt(worst_total) + " (<= 10), sqrt(eps)/a strictly decreasing");
}

// ---------------------------------------------------------------- C07
void higher_integrability_bounded(const EstimateReport& sweep) {
  const auto* ratio = find_criterion(sweep, "higher_integrability_ratio");
  const auto* trend = find_criterion(sweep, "higher_integrability_trend");
  const bool pass = ratio && trend && ratio->pass && trend->pass;
  std::string detail = "higher integrability: ";
  if (ratio) detail += "max/min " + fmt(ratio->value) + " (< 10)";
  if (trend) detail += ", tail slope " + fmt(trend->value) + " (>= -0.1)";
  report("C07", pass, detail);
}

// ---------------------------------------------------------------- C08
void weak_residual_decay(const EstimateReport& sweep) {
  const auto* vm = find_criterion(sweep, "viscous_rhs_momentum_decay");
  const auto* wc = find_criterion(sweep, "euler_residual_continuity_decay");
  const auto* wm = find_criterion(sweep, "euler_residual_momentum_decay");
  const auto* dc = find_criterion(sweep, "weak_defect_continuity");
  const auto* dm = find_criterion(sweep, "weak_defect_momentum");
  const bool pass = vm && wc && wm && dc && dm && vm->pass && wc->pass &&
                    wm->pass && dc->pass && dm->pass;
  std::ostringstream detail;
  detail << "residual decay: viscous-rhs slope "
         << (vm ? fmt(vm->value) : "n/a") << " (> 0.2), euler slopes "
         << (wc ? fmt(wc->value) : "n/a") << "/" << (wm ? fmt(wm->value) : "n/a")
         << " (> 0.2), finest-eps defect fractions "
         << (dc ? fmt(dc->value) : "n/a") << "/" << (dm ? fmt(dm->value) : "n/a")
         << " (<= 0.1)";
  report("C08", pass, detail.str());
}

// ---------------------------------------------------------------- C09
void lemma_shapes_bounded(const EstimateReport& sweep) {
  bool pass = true;
  std::string detail = "gradient-estimate shapes: ";
  int found = 0;
  for (const auto& c : sweep.criteria) {
    if (c.id.rfind("lemma_", 0) == 0) {
      ++found;
      if (!c.pass) pass = false;
      detail += c.id + " growth " + fmt(c.value) + "; ";
    }
  }
  if (found != 4) pass = false;
  report("C09", pass, detail + "(each < 10, no growth trend)");
}

// ---------------------------------------------------------------- C10
void equivalence_check(const EstimateReport& sweep) {
  bool pass = true;
  std::ostringstream detail;

  // converter traces with the canonical time window (flat through t = 1)
  const SmoothCutoff chi_unit(1.0, 2.0);
  const SmoothCutoff psi_unit(1.2, 2.0);
  const MultiDTestFunction phi_unit = component_bump(0, chi_unit, psi_unit);
  const TestFunction zeta_unit = radial_test_from_multiD(phi_unit, 0, 3);
  double trace = 0.0;
  for (double t = 0.0; t <= 1.0; t += 0.1)
    trace = std::max(trace, std::abs(zeta_unit.value(t, 0.0)));
  const double slope_err =
      std::abs(zeta_unit.dr(1.0, 0.0) - 4.0 * std::numbers::pi / 3.0);
  if (trace > 1e-10 || slope_err > 1e-8) pass = false;
  detail << "origin trace " << fmt(trace) << " (<= 1e-10), slope vs 4pi/3 "
         << fmt(slope_err) << " (<= 1e-8)";

  // weak-form agreement on the reference run (middle level)
  const LevelResult& lv = sweep.levels[1];
  if (!lv.ok) {
    pass = false;
  } else {
    const double b = lv.params.b;
    const SmoothCutoff chi(1.0, std::min(1.4, 0.97 * b));
    const SmoothCutoff psi(0.2, 0.45);
    const MultiDTestFunction phi = component_bump(0, chi, psi);
    const EquivalenceReport rep =
        multiD_equivalence(lv.run.trajectory, phi, 0, 24, 48, 4, 4);
    if (!(rep.difference <= 1e-6)) pass = false;
    detail << ", weak-form difference " << fmt(rep.difference)
           << " (<= 1e-6, values " << fmt(rep.multi_d) << ")";
  }
  report("C10", pass, "multi-D vs radial momentum: " + detail.str());
}

// ---------------------------------------------------------------- C11
void identity_refinement() {
  const GasLaw law0 = GasLaw::make(2.0);
  const ViscousParams params = schedule(1e-2, 3, 10.0, law0);
  const GasLaw law = law0.with_delta(params.delta);

  auto residuals = [&](int n, double cfl, int snaps) {
    const RadialGrid grid = make_truncated_grid(params.a, params.b, 3, n, n);
    const auto init = prepare_initial_data(
        gaussian_bump_profile(params.rho_bar, 1.0, 0.5, 0.15),
        constant_profile(0.0), params, grid, law);
    SolverConfig cfg;
    cfg.t_final = 0.5;
    cfg.cfl = cfl;
    cfg.n_snapshots = snaps;
    const auto rr = run(init, cfg, params, law, grid);
    const SmoothCutoff omega = lemma_cutoff();
    const double quad = std::abs(
        continuity_identity_residual(rr.trajectory, TruncationKind::kQuadratic,
                                     0.25, omega)
            .residual);
    const double logt = std::abs(
        continuity_identity_residual(rr.trajectory, TruncationKind::kLog, 0.25,
                                     omega)
            .residual);
    return std::pair{quad, logt};
  };

  const auto coarse = residuals(700, 0.4, 101);
  const auto fine = residuals(1400, 0.2, 201);
  const bool pass = fine.first < coarse.first && fine.second < coarse.second;
  report("C11", pass,
         "truncation-identity residual under 2x refinement: quadratic " +
             fmt(coarse.first) + " -> " + fmt(fine.first) + ", log " +
             fmt(coarse.second) + " -> " + fmt(fine.second) +
             " (both decrease)");
}

}  // namespace

int main() {
  std::printf("spheuler acceptance suite\n");
  entropy_kernel_correctness();
  hessian_identity();
  inequality_suite();

  std::printf("running the reference sweep (3 levels, gamma = 2)...\n");
  std::fflush(stdout);
  const EstimateReport sweep = sweep_report(reference_problem(), 3);

  energy_estimate(sweep);
  constant_fixed_point();
  scheduler_feasibility();
  higher_integrability_bounded(sweep);
  weak_residual_decay(sweep);
  lemma_shapes_bounded(sweep);
  equivalence_check(sweep);
  identity_refinement();

  if (failures == 0)
    std::printf("all acceptance checks passed\n");
  else
    std::printf("%d acceptance check(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
