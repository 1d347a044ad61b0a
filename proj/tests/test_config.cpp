#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>

#include <json.hpp>

#include "spheuler/config.hpp"
#include "spheuler/errors.hpp"
#include "spheuler/report.hpp"
#include "spheuler/runner.hpp"

using namespace spheuler;

TEST_CASE("config round trip is the identity") {
  RunConfig cfg;
  cfg.problem.gamma = 2.5;
  cfg.problem.profile = "constant";
  cfg.schedule.eps = {2e-1, 3e-2, 4e-3};
  cfg.grid.n_log = {100, 200, 300};
  cfg.grid.n_uniform = {50};
  cfg.solver.second_order = true;
  cfg.harness.delta_thresholds = {0.12, 0.3};
  cfg.output.dir = "somewhere/else";

  const std::string text = serialize_config(cfg);
  const RunConfig parsed = parse_config(text);
  CHECK(parsed == cfg);
  // and a second round trip reproduces the exact text
  CHECK(serialize_config(parsed) == text);
}

TEST_CASE("defaults parse from an empty document") {
  const RunConfig cfg = parse_config("");
  CHECK(cfg == RunConfig{});
}

TEST_CASE("diagnostics carry the line number") {
  const std::string bad = "[problem]\nprofile = gaussian_bump\ngamma = fast\n";
  try {
    parse_config(bad);
    FAIL("expected ConfigError");
  } catch (const ConfigError& err) {
    CHECK(err.line() == 3);
    CHECK(err.field() == "gamma");
  }

  CHECK_THROWS_AS(parse_config("[nonsense]\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[problem]\nunknown_key = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("stray = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[problem]\nprofile = vortex\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[schedule]\neps = 1e-3, 1e-2\n"), ConfigError);
  CHECK_THROWS_AS(
      parse_config("[schedule]\neps = 1e-1, 1e-2\n[grid]\nn_log = 1, 2, 3\n"),
      ConfigError);
}

TEST_CASE("comments and spacing are tolerated") {
  const RunConfig cfg = parse_config(
      "# header comment\n"
      "schema_version = 1\n"
      "[problem]  \n"
      "  gamma = 3.0   # inline comment\n"
      "\n"
      "t_final = 0.25\n");
  CHECK(cfg.problem.gamma == 3.0);
  CHECK(cfg.problem.t_final == 0.25);
}

namespace {

RunConfig small_config() {
  RunConfig cfg;
  cfg.problem.profile = "gaussian_bump";
  cfg.problem.t_final = 0.1;
  cfg.schedule.eps = {1e-1, 1e-2};
  cfg.grid.n_log = {250, 350};
  cfg.grid.n_uniform = {250, 350};
  cfg.solver.n_snapshots = 21;
  return cfg;
}

}  // namespace

TEST_CASE("run_single writes the artifact set and echoes the parameters") {
  const auto dir = std::filesystem::temp_directory_path() / "spheuler_single";
  std::filesystem::remove_all(dir);
  const RunConfig cfg = small_config();
  const int code = run_single(cfg, dir, 0);
  CHECK(code == kExitPass);

  const auto level_dir = dir / "eps_0_1";
  REQUIRE(std::filesystem::exists(level_dir / "manifest.json"));
  REQUIRE(std::filesystem::exists(level_dir / "trajectory.csv"));
  REQUIRE(std::filesystem::exists(dir / "report.csv"));

  std::ifstream in(level_dir / "manifest.json");
  nlohmann::json manifest = nlohmann::json::parse(in);
  CHECK(manifest["schema_version"] == 1);
  CHECK(manifest["params"]["eps"] == 0.1);
  CHECK(manifest["params"]["n_dim"] == 3);
  CHECK(manifest["exit"]["ok"] == true);
  CHECK(manifest["params"]["constraint_values"].size() == 6);

  // no stray temp files from the atomic writes
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir))
    CHECK(entry.path().extension() != ".tmp");
}

TEST_CASE("degenerate single-level sweep matches run_single") {
  const auto dir_s = std::filesystem::temp_directory_path() / "spheuler_deg_s";
  const auto dir_w = std::filesystem::temp_directory_path() / "spheuler_deg_w";
  std::filesystem::remove_all(dir_s);
  std::filesystem::remove_all(dir_w);
  RunConfig cfg = small_config();
  cfg.schedule.eps = {1e-2};
  cfg.grid.n_log = {350};
  cfg.grid.n_uniform = {350};
  (void)run_single(cfg, dir_s, 0);
  (void)run_sweep(cfg, dir_w, 1, 0);

  // the per-quantity values agree between the two entry points
  std::ifstream rep(dir_s / "report.csv");
  REQUIRE(rep);
  std::ifstream sweep_json(dir_w / "sweep_summary.json");
  REQUIRE(sweep_json);
  const nlohmann::json summary = nlohmann::json::parse(sweep_json);
  std::map<std::string, double> single;
  std::string line;
  std::getline(rep, line);  // header
  while (std::getline(rep, line)) {
    const auto comma = line.find(',');
    single[line.substr(0, comma)] = std::stod(line.substr(comma + 1));
  }
  const auto& quantities = summary["levels"][0]["quantities"];
  REQUIRE(!quantities.empty());
  for (const auto& [key, value] : quantities.items()) {
    REQUIRE(single.count(key) == 1);
    CHECK(single[key] == doctest::Approx(value.get<double>()).epsilon(1e-12));
  }
}

TEST_CASE("run_sweep artifacts are reproducible byte for byte") {
  const auto dir1 = std::filesystem::temp_directory_path() / "spheuler_sweep1";
  const auto dir2 = std::filesystem::temp_directory_path() / "spheuler_sweep2";
  std::filesystem::remove_all(dir1);
  std::filesystem::remove_all(dir2);
  const RunConfig cfg = small_config();
  (void)run_sweep(cfg, dir1, 2, 7);
  (void)run_sweep(cfg, dir2, 1, 7);

  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  for (const char* name : {"sweep_report.csv", "sweep_summary.json",
                           "schedule.csv"}) {
    CHECK(slurp(dir1 / name) == slurp(dir2 / name));
  }
  REQUIRE(std::filesystem::exists(dir1 / "plots"));
  int plot_count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir1 / "plots")) {
    CHECK(entry.path().extension() == ".svg");
    const std::string svg = slurp(entry.path());
    CHECK(svg.find("<svg") != std::string::npos);
    ++plot_count;
  }
  CHECK(plot_count > 10);

  // per-level trajectories exist for both eps levels
  CHECK(std::filesystem::exists(dir1 / "eps_0_1" / "trajectory.csv"));
  CHECK(std::filesystem::exists(dir1 / "eps_0_01" / "trajectory.csv"));
}
