#ifndef SPHEULER_REPORT_HPP_
#define SPHEULER_REPORT_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "spheuler/harness.hpp"
#include "spheuler/solver.hpp"

namespace spheuler {

/// Writes content to path atomically (temp file + rename; complete or absent).
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Trajectory CSV: snapshot,t,r,rho,m per row.
std::string trajectory_csv(const Trajectory& traj);

/// Versioned JSON run manifest: resolved parameters, config echo, energies,
/// accumulators, exit status.
std::string run_manifest_json(const Trajectory& traj, const SolverConfig& config,
                              bool ok, const std::string& error,
                              const std::vector<std::string>& artifacts);

/// JSON summary of a sweep report (fits, ratios, criteria).
std::string estimate_report_json(const EstimateReport& report);

/// Log-log scatter+line plot of one sweep quantity with its fitted slope.
std::string svg_loglog_plot(const SweepQuantity& quantity);

}  // namespace spheuler

#endif  // SPHEULER_REPORT_HPP_
