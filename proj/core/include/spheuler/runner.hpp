#ifndef SPHEULER_RUNNER_HPP_
#define SPHEULER_RUNNER_HPP_

#include <cstdint>
#include <filesystem>

#include "spheuler/config.hpp"
#include "spheuler/harness.hpp"

namespace spheuler {

/// Exit code contract shared by the CLI:
///   0  all criteria pass,
///   1  configuration or run error,
///   2  a verification criterion failed.
inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCriterionFail = 2;

/// Translates a run configuration into the sweep problem consumed by
/// sweep_report. The seed only affects randomized test-function sampling.
SweepProblem make_sweep_problem(const RunConfig& config, std::uint64_t seed = 0);

/// Executes the first eps level only: schedule, solve, per-run report.
/// Writes trajectory CSV, manifest JSON and report CSV under out_dir.
int run_single(const RunConfig& config, const std::filesystem::path& out_dir,
               std::uint64_t seed = 0);

/// Executes the full sweep with up to `jobs` parallel levels; emits the
/// sweep report CSV/JSON and one SVG plot per tracked quantity.
int run_sweep(const RunConfig& config, const std::filesystem::path& out_dir,
              int jobs = 1, std::uint64_t seed = 0);

}  // namespace spheuler

#endif  // SPHEULER_RUNNER_HPP_
