#include "spheuler/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spheuler/errors.hpp"

namespace spheuler {

using nlohmann::json;

void atomic_write(const std::filesystem::path& path,
                  const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("atomic_write: cannot open " + tmp.string());
    out << content;
    if (!out) throw Error("atomic_write: short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream out;
  out.precision(17);
  out << "snapshot,t,r,rho,m\n";
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const auto& snap = traj.snapshots[k];
    for (std::size_t i = 0; i < traj.grid.size(); ++i) {
      out << k << ',' << snap.t << ',' << traj.grid.node(i) << ','
          << snap.rho[i] << ',' << snap.m[i] << '\n';
    }
  }
  return out.str();
}

namespace {

json params_json(const ViscousParams& p) {
  json j;
  j["eps"] = p.eps;
  j["delta"] = p.delta;
  j["rho_bar"] = p.rho_bar;
  j["a"] = p.a;
  j["b"] = p.b;
  j["n_dim"] = p.n_dim;
  j["m0_budget"] = p.m0_budget;
  j["constraint_values"] = p.constraint_values;
  return j;
}

}  // namespace

std::string run_manifest_json(const Trajectory& traj,
                              const SolverConfig& config, bool ok,
                              const std::string& error,
                              const std::vector<std::string>& artifacts) {
  json j;
  j["schema_version"] = 1;
  j["params"] = params_json(traj.params);
  j["gas_law"] = {{"gamma", traj.law.gamma},
                  {"kappa", traj.law.kappa},
                  {"delta", traj.law.delta}};
  j["solver"] = {{"cfl", config.cfl},
                 {"viscous_dt_factor", config.viscous_dt_factor},
                 {"t_final", config.t_final},
                 {"n_snapshots", config.n_snapshots},
                 {"second_order", config.second_order},
                 {"density_floor", config.density_floor}};
  j["initial_energy"] = traj.initial_energy;
  j["c_eps"] = traj.c_eps;
  j["steps_taken"] = traj.steps_taken;
  if (!traj.snapshots.empty()) {
    const auto& d = traj.snapshots.back().dissipation;
    j["dissipation"] = {{"density_gradient", d.density_gradient},
                        {"velocity_gradient", d.velocity_gradient},
                        {"geometric", d.geometric},
                        {"total", d.total()}};
  }
  j["exit"] = {{"ok", ok}, {"error", error}};
  j["artifacts"] = artifacts;
  return j.dump(2) + "\n";
}

std::string estimate_report_json(const EstimateReport& report) {
  json j;
  j["schema_version"] = 1;
  json levels = json::array();
  for (const auto& lv : report.levels) {
    json l;
    l["eps"] = lv.params.eps;
    l["ok"] = lv.ok;
    l["error"] = lv.error;
    l["params"] = params_json(lv.params);
    l["grid_nodes"] = lv.run.trajectory.grid.size();
    l["steps"] = lv.run.trajectory.steps_taken;
    l["quantities"] = lv.quantities;
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
  json quantities = json::array();
  for (const auto& qt : report.quantities) {
    quantities.push_back({{"id", qt.id},
                          {"eps", qt.eps},
                          {"values", qt.values},
                          {"slope", qt.fit.slope},
                          {"intercept", qt.fit.intercept},
                          {"max_min_ratio", qt.max_min_ratio}});
  }
  j["quantities"] = std::move(quantities);
  json criteria = json::array();
  for (const auto& c : report.criteria) {
    criteria.push_back({{"id", c.id},
                        {"pass", c.pass},
                        {"value", c.value},
                        {"threshold", c.threshold},
                        {"detail", c.detail}});
  }
  j["criteria"] = std::move(criteria);
  j["all_pass"] = report.all_pass();
  return j.dump(2) + "\n";
}

std::string svg_loglog_plot(const SweepQuantity& quantity) {
  const int width = 640, height = 480;
  const int ml = 70, mr = 20, mt = 40, mb = 50;
  std::ostringstream svg;
  svg.precision(6);

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < quantity.eps.size(); ++i) {
    const double x = std::log10(quantity.eps[i]);
    const double y = std::log10(std::max(quantity.values[i], 1e-300));
    xs.push_back(x);
    ys.push_back(y);
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (xmax - xmin < 1e-12) { xmin -= 0.5; xmax += 0.5; }
  if (ymax - ymin < 1e-12) { ymin -= 0.5; ymax += 0.5; }
  const double xpad = 0.08 * (xmax - xmin), ypad = 0.12 * (ymax - ymin);
  xmin -= xpad; xmax += xpad; ymin -= ypad; ymax += ypad;

  auto px = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr);
  };
  auto py = [&](double y) {
    return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
  };

  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << quantity.id
      << " vs eps (slope " << quantity.fit.slope << ")</text>\n";

  // Decade grid lines and labels.
  for (int d = static_cast<int>(std::ceil(xmin)); d <= std::floor(xmax); ++d) {
    svg << "<line x1=\"" << px(d) << "\" y1=\"" << py(ymin) << "\" x2=\""
        << px(d) << "\" y2=\"" << py(ymax)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << px(d) << "\" y=\"" << height - mb + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">1e"
        << d << "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(ymin)); d <= std::floor(ymax); ++d) {
    svg << "<line x1=\"" << px(xmin) << "\" y1=\"" << py(d) << "\" x2=\""
        << px(xmax) << "\" y2=\"" << py(d)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << ml - 8 << "\" y=\"" << py(d) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"12\">1e"
        << d << "</text>\n";
  }
  // Axes box.
  svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\""
      << width - ml - mr << "\" height=\"" << height - mt - mb
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  // Fitted line across the x-range.
  const double lx0 = xmin + 0.02, lx1 = xmax - 0.02;
  const double ln10 = std::log(10.0);
  auto fit_y = [&](double x10) {
    return (quantity.fit.slope * (x10 * ln10) + quantity.fit.intercept) / ln10;
  };
  svg << "<line x1=\"" << px(lx0) << "\" y1=\"" << py(fit_y(lx0)) << "\" x2=\""
      << px(lx1) << "\" y2=\"" << py(fit_y(lx1))
      << "\" stroke=\"#c03030\" stroke-width=\"1.5\" "
         "stroke-dasharray=\"6,4\"/>\n";

  // Data polyline + markers.
  svg << "<polyline fill=\"none\" stroke=\"#3060c0\" stroke-width=\"2\" "
         "points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i)
    svg << px(xs[i]) << ',' << py(ys[i]) << ' ';
  svg << "\"/>\n";
  for (std::size_t i = 0; i < xs.size(); ++i)
    svg << "<circle cx=\"" << px(xs[i]) << "\" cy=\"" << py(ys[i])
        << "\" r=\"4\" fill=\"#3060c0\"/>\n";

  svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">eps</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace spheuler
