#include "spheuler/runner.hpp"

#include <iostream>
#include <sstream>

#include "spheuler/errors.hpp"
#include "spheuler/report.hpp"

namespace spheuler {

namespace {

std::function<Profile(const ViscousParams&)> density_factory(
    const RunConfig::Problem& p) {
  if (p.profile == "constant") {
    return [](const ViscousParams& params) {
      return constant_profile(params.rho_bar);
    };
  }
  return [p](const ViscousParams& params) {
    return gaussian_bump_profile(params.rho_bar, p.amplitude, p.center,
                                 p.width);
  };
}

std::function<Profile(const ViscousParams&)> momentum_factory(
    const RunConfig::Problem& p) {
  if (p.momentum_profile == "gaussian") {
    return [p](const ViscousParams&) {
      return gaussian_bump_profile(0.0, p.momentum_amplitude, p.center,
                                   p.width);
    };
  }
  return [](const ViscousParams&) { return constant_profile(0.0); };
}

std::string eps_tag(double eps) {
  std::ostringstream s;
  s << eps;
  std::string tag = s.str();
  for (char& c : tag)
    if (c == '.' || c == '+') c = '_';
  return tag;
}

void write_level_artifacts(const std::filesystem::path& dir,
                           const LevelResult& lv, const SolverConfig& solver,
                           bool write_trajectory,
                           std::vector<std::string>& files) {
  const std::filesystem::path level_dir = dir / ("eps_" + eps_tag(lv.params.eps));
  std::vector<std::string> artifacts;
  if (write_trajectory && !lv.run.trajectory.snapshots.empty()) {
    atomic_write(level_dir / "trajectory.csv",
                 trajectory_csv(lv.run.trajectory));
    artifacts.push_back("trajectory.csv");
  }
  atomic_write(level_dir / "manifest.json",
               run_manifest_json(lv.run.trajectory, solver, lv.ok, lv.error,
                                 artifacts));
  files.push_back((level_dir / "manifest.json").string());
}

}  // namespace

SweepProblem make_sweep_problem(const RunConfig& cfg, std::uint64_t seed) {
  SweepProblem problem;
  problem.law = GasLaw::make(cfg.problem.gamma, 0.0);
  problem.n_dim = cfg.problem.n_dim;
  problem.m0_budget = cfg.schedule.m0_budget;
  problem.schedule_options.a_exponent = cfg.schedule.a_exponent;
  problem.schedule_options.b_exponent = cfg.schedule.b_exponent;
  problem.schedule_options.delta_exponent = cfg.schedule.delta_exponent;
  problem.rho_raw = density_factory(cfg.problem);
  problem.m_raw = momentum_factory(cfg.problem);
  problem.init_options.mollify_width = cfg.initial_data.mollify_width;
  problem.init_options.blend_width = cfg.initial_data.blend_width;
  problem.init_options.lift_floor = cfg.initial_data.lift_floor;
  problem.init_options.energy_tol = cfg.initial_data.energy_tol;

  for (std::size_t i = 0; i < cfg.schedule.eps.size(); ++i) {
    SweepLevel level;
    level.eps = cfg.schedule.eps[i];
    level.n_log = cfg.grid.n_log.size() == 1 ? cfg.grid.n_log[0]
                                             : cfg.grid.n_log[i];
    level.n_uniform = cfg.grid.n_uniform.size() == 1 ? cfg.grid.n_uniform[0]
                                                     : cfg.grid.n_uniform[i];
    level.solver.cfl = cfg.solver.cfl;
    level.solver.viscous_dt_factor = cfg.solver.viscous_dt_factor;
    level.solver.t_final = cfg.problem.t_final;
    level.solver.n_snapshots = cfg.solver.n_snapshots;
    level.solver.second_order = cfg.solver.second_order;
    level.solver.density_floor = cfg.solver.density_floor;
    problem.levels.push_back(level);
  }

  auto& h = problem.harness;
  h.delta_thresholds = cfg.harness.delta_thresholds;
  h.energy_tol = cfg.harness.energy_tol;
  h.tf_r_plateau = cfg.harness.tf_r_plateau;
  h.tf_r_cut = cfg.harness.tf_r_cut;
  h.tf_t_plateau_frac = cfg.harness.tf_t_plateau_frac;
  h.tf_t_cut_frac = cfg.harness.tf_t_cut_frac;
  h.sphere_polar = cfg.harness.sphere_polar;
  h.sphere_azimuth = cfg.harness.sphere_azimuth;
  h.n_random_test_functions = cfg.harness.n_random_test_functions;
  h.seed = seed;
  return problem;
}

int run_single(const RunConfig& cfg, const std::filesystem::path& out_dir,
               std::uint64_t seed) {
  RunConfig single = cfg;
  single.schedule.eps = {cfg.schedule.eps.front()};
  if (cfg.grid.n_log.size() > 1) single.grid.n_log = {cfg.grid.n_log.front()};
  if (cfg.grid.n_uniform.size() > 1)
    single.grid.n_uniform = {cfg.grid.n_uniform.front()};
  const SweepProblem problem = make_sweep_problem(single, seed);

  EstimateReport report;
  try {
    report = sweep_report(problem, 1);
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitError;
  }
  const LevelResult& lv = report.levels.front();
  std::vector<std::string> files;
  write_level_artifacts(out_dir, lv, problem.levels.front().solver,
                        cfg.output.write_trajectory, files);
  if (!lv.ok) {
    std::cerr << "error: " << lv.error << "\n";
    return kExitError;
  }

  std::ostringstream csv;
  csv.precision(17);
  csv << "quantity,value\n";
  for (const auto& [id, value] : lv.quantities)
    csv << id << ',' << value << '\n';
  atomic_write(out_dir / "report.csv", csv.str());

  const EnergyReport er =
      energy_report(lv.run.trajectory, problem.harness.energy_tol);
  std::cout << (er.pass ? "[ PASS ]" : "[ FAIL ]")
            << " energy_estimate  sup(E + dissipation) = " << er.sup_combined
            << " vs E0 (1 + tol) = " << er.initial_energy * (1.0 + er.tol)
            << "\n";
  return er.pass ? kExitPass : kExitCriterionFail;
}

int run_sweep(const RunConfig& cfg, const std::filesystem::path& out_dir,
              int jobs, std::uint64_t seed) {
  const SweepProblem problem = make_sweep_problem(cfg, seed);
  EstimateReport report;
  try {
    report = sweep_report(problem, jobs);
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitError;
  }

  std::vector<std::string> files;
  for (std::size_t i = 0; i < report.levels.size(); ++i) {
    write_level_artifacts(out_dir, report.levels[i], problem.levels[i].solver,
                          cfg.output.write_trajectory, files);
  }
  atomic_write(out_dir / "sweep_report.csv", estimate_report_csv(report));
  atomic_write(out_dir / "sweep_summary.json", estimate_report_json(report));
  {
    std::vector<ViscousParams> rows;
    for (const auto& lv : report.levels) rows.push_back(lv.params);
    atomic_write(out_dir / "schedule.csv",
                 schedule_table_csv(rows, problem.law));
  }
  for (const auto& qt : report.quantities) {
    if (qt.eps.size() >= 2)
      atomic_write(out_dir / "plots" / ("plot_" + qt.id + ".svg"),
                   svg_loglog_plot(qt));
  }

  for (const auto& lv : report.levels) {
    if (!lv.ok)
      std::cout << "[ FAIL ] level eps = " << lv.params.eps << ": " << lv.error
                << "\n";
  }
  for (const auto& c : report.criteria) {
    std::cout << (c.pass ? "[ PASS ] " : "[ FAIL ] ") << c.id << "  value "
              << c.value << " vs " << c.threshold;
    if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
    std::cout << "\n";
  }
  return report.all_pass() ? kExitPass : kExitCriterionFail;
}

}  // namespace spheuler
