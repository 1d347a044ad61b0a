#ifndef SPHEULER_CONFIG_HPP_
#define SPHEULER_CONFIG_HPP_

#include <filesystem>
#include <string>
#include <vector>

namespace spheuler {

/// Run configuration, a direct image of the sectioned key-value config file.
/// Every field has a default; parse -> serialize -> parse is the identity.
struct RunConfig {
  struct Problem {
    std::string profile = "gaussian_bump";  ///< constant | gaussian_bump
    double gamma = 2.0;
    int n_dim = 3;
    double t_final = 0.5;
    double amplitude = 1.0;
    double center = 0.5;
    double width = 0.15;
    std::string momentum_profile = "zero";  ///< zero | gaussian
    double momentum_amplitude = 0.0;
    bool operator==(const Problem&) const = default;
  } problem;

  struct Schedule {
    std::vector<double> eps = {1e-1, 1e-2, 1e-3};  ///< strictly decreasing
    double m0_budget = 10.0;
    double a_exponent = 1.0 / 3.0;
    double b_exponent = 0.25;
    double delta_exponent = 3.0;
    bool operator==(const Schedule&) const = default;
  } schedule;

  struct Grid {
    std::vector<int> n_log = {2500, 3000, 9000};     ///< per eps, or broadcast
    std::vector<int> n_uniform = {1500, 3000, 9000}; ///< per eps, or broadcast
    double min_spacing = 1e-9;
    bool operator==(const Grid&) const = default;
  } grid;

  struct Solver {
    double cfl = 0.4;
    double viscous_dt_factor = 100.0;
    int n_snapshots = 101;
    bool second_order = false;
    double density_floor = 1e-13;
    bool operator==(const Solver&) const = default;
  } solver;

  struct InitialDataSection {
    double mollify_width = 0.02;
    double blend_width = 0.05;
    double lift_floor = 0.0;
    double energy_tol = 0.25;
    bool operator==(const InitialDataSection&) const = default;
  } initial_data;

  struct Harness {
    std::vector<double> delta_thresholds = {0.1, 0.25};
    double energy_tol = 1e-4;
    double tf_r_plateau = 0.55;
    double tf_r_cut = 0.85;
    double tf_t_plateau_frac = 0.5;
    double tf_t_cut_frac = 0.9;
    int sphere_polar = 24;
    int sphere_azimuth = 48;
    int n_random_test_functions = 0;
    bool operator==(const Harness&) const = default;
  } harness;

  struct Output {
    std::string dir = "out";
    bool write_trajectory = true;
    bool operator==(const Output&) const = default;
  } output;

  bool operator==(const RunConfig&) const = default;
};

/// Parses the sectioned key-value format. Unknown sections or keys and
/// malformed values raise ConfigError carrying the line number.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

std::string serialize_config(const RunConfig& config);

}  // namespace spheuler

#endif  // SPHEULER_CONFIG_HPP_
