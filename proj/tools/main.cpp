#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "spheuler/config.hpp"
#include "spheuler/errors.hpp"
#include "spheuler/runner.hpp"

namespace {

spheuler::RunConfig load_or_die(const std::string& path) {
  return spheuler::load_config(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spheuler: truncated-domain viscous radial gas solver and "
               "uniform-estimate verification harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  std::uint64_t seed = 0;

  auto* run_cmd = app.add_subcommand("run", "Execute a single run (first eps)");
  run_cmd->add_option("config", config_path, "Config file")->required();
  run_cmd->add_option("--out", out_override, "Output directory override");
  run_cmd->add_option("--seed", seed, "Seed for randomized test-function sampling");

  auto* sweep_cmd = app.add_subcommand("sweep", "Execute the full eps sweep");
  sweep_cmd->add_option("config", config_path, "Config file")->required();
  sweep_cmd->add_option("--out", out_override, "Output directory override");
  sweep_cmd->add_option("--jobs", jobs, "Parallel levels");
  sweep_cmd->add_option("--seed", seed, "Seed for randomized test-function sampling");

  CLI11_PARSE(app, argc, argv);

  try {
    const spheuler::RunConfig cfg = load_or_die(config_path);
    const std::string out = out_override.empty() ? cfg.output.dir : out_override;
    if (run_cmd->parsed()) return spheuler::run_single(cfg, out, seed);
    return spheuler::run_sweep(cfg, out, jobs, seed);
  } catch (const spheuler::ConfigError& err) {
    std::cerr << "config error";
    if (err.line() > 0) std::cerr << " (line " << err.line() << ")";
    if (!err.field().empty()) std::cerr << " [" << err.field() << "]";
    std::cerr << ": " << err.what() << "\n";
    return spheuler::kExitError;
  } catch (const spheuler::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return spheuler::kExitError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return spheuler::kExitError;
  }
}
