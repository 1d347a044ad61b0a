#include "spheuler/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "spheuler/errors.hpp"

namespace spheuler {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("expected a number for '" + key + "', got '" + v + "'",
                      line, key);
  }
}

int parse_int(const std::string& v, int line, const std::string& key) {
  try {
    std::size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("expected an integer for '" + key + "', got '" + v + "'",
                      line, key);
  }
}

bool parse_bool(const std::string& v, int line, const std::string& key) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("expected true/false for '" + key + "', got '" + v + "'",
                    line, key);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> parts;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(trim(item));
  return parts;
}

std::vector<double> parse_double_list(const std::string& v, int line,
                                      const std::string& key) {
  std::vector<double> out;
  for (const auto& p : split_list(v)) out.push_back(parse_double(p, line, key));
  if (out.empty())
    throw ConfigError("empty list for '" + key + "'", line, key);
  return out;
}

std::vector<int> parse_int_list(const std::string& v, int line,
                                const std::string& key) {
  std::vector<int> out;
  for (const auto& p : split_list(v)) out.push_back(parse_int(p, line, key));
  if (out.empty())
    throw ConfigError("empty list for '" + key + "'", line, key);
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    out << v[i];
  }
  return out.str();
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;

  auto fail = [&](const std::string& what, const std::string& key = {}) {
    throw ConfigError(what + " (line " + std::to_string(line_no) + ")",
                      line_no, key);
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "problem" && section != "schedule" && section != "grid" &&
          section != "solver" && section != "initial_data" &&
          section != "harness" && section != "output")
        fail("unknown section '" + section + "'", section);
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail("missing key");
    if (value.empty()) fail("missing value for '" + key + "'", key);

    if (section.empty()) {
      if (key == "schema_version") {
        if (parse_int(value, line_no, key) != 1)
          fail("unsupported schema_version", key);
      } else {
        fail("key '" + key + "' outside any section", key);
      }
    } else if (section == "problem") {
      auto& p = cfg.problem;
      if (key == "profile") p.profile = value;
      else if (key == "gamma") p.gamma = parse_double(value, line_no, key);
      else if (key == "n_dim") p.n_dim = parse_int(value, line_no, key);
      else if (key == "t_final") p.t_final = parse_double(value, line_no, key);
      else if (key == "amplitude") p.amplitude = parse_double(value, line_no, key);
      else if (key == "center") p.center = parse_double(value, line_no, key);
      else if (key == "width") p.width = parse_double(value, line_no, key);
      else if (key == "momentum_profile") p.momentum_profile = value;
      else if (key == "momentum_amplitude")
        p.momentum_amplitude = parse_double(value, line_no, key);
      else fail("unknown key '" + key + "' in [problem]", key);
    } else if (section == "schedule") {
      auto& s = cfg.schedule;
      if (key == "eps") s.eps = parse_double_list(value, line_no, key);
      else if (key == "m0_budget") s.m0_budget = parse_double(value, line_no, key);
      else if (key == "a_exponent") s.a_exponent = parse_double(value, line_no, key);
      else if (key == "b_exponent") s.b_exponent = parse_double(value, line_no, key);
      else if (key == "delta_exponent")
        s.delta_exponent = parse_double(value, line_no, key);
      else fail("unknown key '" + key + "' in [schedule]", key);
    } else if (section == "grid") {
      auto& g = cfg.grid;
      if (key == "n_log") g.n_log = parse_int_list(value, line_no, key);
      else if (key == "n_uniform") g.n_uniform = parse_int_list(value, line_no, key);
      else if (key == "min_spacing") g.min_spacing = parse_double(value, line_no, key);
      else fail("unknown key '" + key + "' in [grid]", key);
    } else if (section == "solver") {
      auto& s = cfg.solver;
      if (key == "cfl") s.cfl = parse_double(value, line_no, key);
      else if (key == "viscous_dt_factor")
        s.viscous_dt_factor = parse_double(value, line_no, key);
      else if (key == "n_snapshots") s.n_snapshots = parse_int(value, line_no, key);
      else if (key == "second_order") s.second_order = parse_bool(value, line_no, key);
      else if (key == "density_floor")
        s.density_floor = parse_double(value, line_no, key);
      else fail("unknown key '" + key + "' in [solver]", key);
    } else if (section == "initial_data") {
      auto& d = cfg.initial_data;
      if (key == "mollify_width") d.mollify_width = parse_double(value, line_no, key);
      else if (key == "blend_width") d.blend_width = parse_double(value, line_no, key);
      else if (key == "lift_floor") d.lift_floor = parse_double(value, line_no, key);
      else if (key == "energy_tol") d.energy_tol = parse_double(value, line_no, key);
      else fail("unknown key '" + key + "' in [initial_data]", key);
    } else if (section == "harness") {
      auto& h = cfg.harness;
      if (key == "delta_thresholds")
        h.delta_thresholds = parse_double_list(value, line_no, key);
      else if (key == "energy_tol") h.energy_tol = parse_double(value, line_no, key);
      else if (key == "tf_r_plateau") h.tf_r_plateau = parse_double(value, line_no, key);
      else if (key == "tf_r_cut") h.tf_r_cut = parse_double(value, line_no, key);
      else if (key == "tf_t_plateau_frac")
        h.tf_t_plateau_frac = parse_double(value, line_no, key);
      else if (key == "tf_t_cut_frac")
        h.tf_t_cut_frac = parse_double(value, line_no, key);
      else if (key == "sphere_polar") h.sphere_polar = parse_int(value, line_no, key);
      else if (key == "sphere_azimuth")
        h.sphere_azimuth = parse_int(value, line_no, key);
      else if (key == "n_random_test_functions")
        h.n_random_test_functions = parse_int(value, line_no, key);
      else fail("unknown key '" + key + "' in [harness]", key);
    } else if (section == "output") {
      auto& o = cfg.output;
      if (key == "dir") o.dir = value;
      else if (key == "write_trajectory")
        o.write_trajectory = parse_bool(value, line_no, key);
      else fail("unknown key '" + key + "' in [output]", key);
    }
  }

  // Structural invariants.
  for (std::size_t i = 0; i + 1 < cfg.schedule.eps.size(); ++i)
    if (!(cfg.schedule.eps[i + 1] < cfg.schedule.eps[i]))
      throw ConfigError("schedule.eps must be strictly decreasing", 0, "eps");
  auto check_broadcast = [&](std::size_t n, const char* key) {
    if (n != 1 && n != cfg.schedule.eps.size())
      throw ConfigError(std::string("grid.") + key +
                            " must have 1 entry or one per eps",
                        0, key);
  };
  check_broadcast(cfg.grid.n_log.size(), "n_log");
  check_broadcast(cfg.grid.n_uniform.size(), "n_uniform");
  if (cfg.problem.profile != "constant" && cfg.problem.profile != "gaussian_bump")
    throw ConfigError("unknown problem.profile '" + cfg.problem.profile + "'",
                      0, "profile");
  if (cfg.problem.momentum_profile != "zero" &&
      cfg.problem.momentum_profile != "gaussian")
    throw ConfigError("unknown problem.momentum_profile '" +
                          cfg.problem.momentum_profile + "'",
                      0, "momentum_profile");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  out.precision(17);
  out << "schema_version = 1\n\n";
  out << "[problem]\n";
  out << "profile = " << cfg.problem.profile << "\n";
  out << "gamma = " << cfg.problem.gamma << "\n";
  out << "n_dim = " << cfg.problem.n_dim << "\n";
  out << "t_final = " << cfg.problem.t_final << "\n";
  out << "amplitude = " << cfg.problem.amplitude << "\n";
  out << "center = " << cfg.problem.center << "\n";
  out << "width = " << cfg.problem.width << "\n";
  out << "momentum_profile = " << cfg.problem.momentum_profile << "\n";
  out << "momentum_amplitude = " << cfg.problem.momentum_amplitude << "\n\n";
  out << "[schedule]\n";
  out << "eps = " << join(cfg.schedule.eps) << "\n";
  out << "m0_budget = " << cfg.schedule.m0_budget << "\n";
  out << "a_exponent = " << cfg.schedule.a_exponent << "\n";
  out << "b_exponent = " << cfg.schedule.b_exponent << "\n";
  out << "delta_exponent = " << cfg.schedule.delta_exponent << "\n\n";
  out << "[grid]\n";
  out << "n_log = " << join(cfg.grid.n_log) << "\n";
  out << "n_uniform = " << join(cfg.grid.n_uniform) << "\n";
  out << "min_spacing = " << cfg.grid.min_spacing << "\n\n";
  out << "[solver]\n";
  out << "cfl = " << cfg.solver.cfl << "\n";
  out << "viscous_dt_factor = " << cfg.solver.viscous_dt_factor << "\n";
  out << "n_snapshots = " << cfg.solver.n_snapshots << "\n";
  out << "second_order = " << (cfg.solver.second_order ? "true" : "false") << "\n";
  out << "density_floor = " << cfg.solver.density_floor << "\n\n";
  out << "[initial_data]\n";
  out << "mollify_width = " << cfg.initial_data.mollify_width << "\n";
  out << "blend_width = " << cfg.initial_data.blend_width << "\n";
  out << "lift_floor = " << cfg.initial_data.lift_floor << "\n";
  out << "energy_tol = " << cfg.initial_data.energy_tol << "\n\n";
  out << "[harness]\n";
  out << "delta_thresholds = " << join(cfg.harness.delta_thresholds) << "\n";
  out << "energy_tol = " << cfg.harness.energy_tol << "\n";
  out << "tf_r_plateau = " << cfg.harness.tf_r_plateau << "\n";
  out << "tf_r_cut = " << cfg.harness.tf_r_cut << "\n";
  out << "tf_t_plateau_frac = " << cfg.harness.tf_t_plateau_frac << "\n";
  out << "tf_t_cut_frac = " << cfg.harness.tf_t_cut_frac << "\n";
  out << "sphere_polar = " << cfg.harness.sphere_polar << "\n";
  out << "sphere_azimuth = " << cfg.harness.sphere_azimuth << "\n";
  out << "n_random_test_functions = " << cfg.harness.n_random_test_functions
      << "\n\n";
  out << "[output]\n";
  out << "dir = " << cfg.output.dir << "\n";
  out << "write_trajectory = " << (cfg.output.write_trajectory ? "true" : "false")
      << "\n";
  return out.str();
}

}  // namespace spheuler
