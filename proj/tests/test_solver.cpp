#include <doctest.h>

#include <cmath>

#include "spheuler/solver.hpp"
#include "spheuler/errors.hpp"

using namespace spheuler;

namespace {

struct Setup {
  GasLaw law = GasLaw::make(2.0);
  ViscousParams params;
  RadialGrid grid;

  explicit Setup(double eps = 1e-2, int n_log = 400, int n_uni = 400) {
    params = schedule(eps, 3, 10.0, GasLaw::make(2.0));
    law = law.with_delta(params.delta);
    grid = make_truncated_grid(params.a, params.b, 3, n_log, n_uni);
  }

  InitialData constant_init() const {
    return prepare_initial_data(constant_profile(params.rho_bar),
                                constant_profile(0.0), params, grid, law);
  }
  InitialData bump_init(double amp = 1.0) const {
    return prepare_initial_data(
        gaussian_bump_profile(params.rho_bar, amp, 0.5, 0.15),
        constant_profile(0.0), params, grid, law);
  }
};

RadialField to_field(const InitialData& init, double floor) {
  RadialField f;
  f.t = 0.0;
  f.rho = init.rho0;
  f.m = init.m0;
  f.density_floor_seen = floor;
  return f;
}

}  // namespace

TEST_CASE("constant state is a fixed point of one step") {
  Setup s;
  SolverConfig cfg;
  const auto init = s.constant_init();
  const RadialField f0 = to_field(init, init.c_eps);
  const RadialField f1 = step(f0, cfg, s.params, s.law, s.grid);
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    CHECK(std::abs(f1.rho[i] - s.params.rho_bar) < 1e-12);
    CHECK(std::abs(f1.m[i]) < 1e-12);
  }
}

TEST_CASE("constant state is preserved over T = 1") {
  Setup s;
  SolverConfig cfg;
  cfg.t_final = 1.0;
  cfg.n_snapshots = 9;
  const auto rr = run(s.constant_init(), cfg, s.params, s.law, s.grid);
  REQUIRE(rr.ok);
  for (const auto& snap : rr.trajectory.snapshots) {
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      CHECK(std::abs(snap.rho[i] - s.params.rho_bar) < 1e-10);
      CHECK(std::abs(snap.m[i]) < 1e-10);
    }
  }
}

TEST_CASE("one step changes the interior mass only by the boundary fluxes") {
  Setup s;
  SolverConfig cfg;  // first-order fluxes
  const auto init = s.bump_init();
  const RadialField f0 = to_field(init, init.c_eps);
  Stepper stepper(cfg, s.params, s.law, s.grid);
  const double dt = stepper.stable_dt(f0);
  const RadialField f1 = stepper.advance(f0, dt);

  const RadialGrid& g = s.grid;
  const std::size_t n = g.size();
  auto interior_mass = [&](const RadialField& f) {
    double sum = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i)
      sum += g.dual_width(i) * g.geom(i) * f.rho[i];
    return sum;
  };

  // Bookkeeping oracle: the explicit interface flux at the two interior
  // boundaries (recomputed from the old state) plus the implicit diffusive
  // flux (from the new state).
  auto llf_mass_flux = [&](std::size_t i) {
    const double ul = f0.m[i] / f0.rho[i];
    const double ur = f0.m[i + 1] / f0.rho[i + 1];
    const double alpha =
        std::max(std::abs(ul) + sound_speed(f0.rho[i], s.law),
                 std::abs(ur) + sound_speed(f0.rho[i + 1], s.law));
    return 0.5 * (f0.m[i] + f0.m[i + 1]) -
           0.5 * alpha * (f0.rho[i + 1] - f0.rho[i]);
  };
  auto diff_flux = [&](std::size_t i) {
    return g.geom_mid(i) * (f1.rho[i + 1] - f1.rho[i]) / g.spacing(i);
  };
  const double expected =
      -dt * (g.geom_mid(n - 2) * llf_mass_flux(n - 2) -
             g.geom_mid(0) * llf_mass_flux(0)) +
      dt * s.params.eps * (diff_flux(n - 2) - diff_flux(0));

  const double change = interior_mass(f1) - interior_mass(f0);
  CHECK(std::abs(change - expected) <=
        1e-10 * (1.0 + std::abs(interior_mass(f0))));
}

TEST_CASE("time integration is at least first order in dt") {
  Setup s(1e-2, 300, 300);
  const auto init = s.bump_init(0.5);

  auto run_with_cfl = [&](double cfl) {
    SolverConfig cfg;
    cfg.t_final = 0.05;
    cfg.cfl = cfl;
    cfg.n_snapshots = 2;
    const auto rr = run(init, cfg, s.params, s.law, s.grid);
    REQUIRE(rr.ok);
    return rr.trajectory.snapshots.back();
  };

  const RadialField ref = run_with_cfl(0.05);
  auto err = [&](const RadialField& f) {
    double e = 0.0;
    for (std::size_t i = 0; i < s.grid.size(); ++i)
      e = std::max(e, std::abs(f.rho[i] - ref.rho[i]));
    return e;
  };
  const double e1 = err(run_with_cfl(0.4));
  const double e2 = err(run_with_cfl(0.2));
  const double order = std::log2(e1 / e2);
  CHECK(order >= 0.8);
}

TEST_CASE("energy accounting margin shrinks under refinement") {
  // The margin is only visible with the reconstruction on; the first-order
  // fluxes dissipate enough that the supremum sits at t = 0.
  auto margin_at = [&](int nodes, double cfl) {
    Setup s(1e-2, nodes, nodes);
    SolverConfig cfg;
    cfg.t_final = 0.25;
    cfg.second_order = true;
    cfg.cfl = cfl;
    cfg.n_snapshots = 51;
    const auto rr = run(s.bump_init(), cfg, s.params, s.law, s.grid);
    REQUIRE(rr.ok);
    double sup = 0.0;
    for (const auto& snap : rr.trajectory.snapshots) {
      sup = std::max(sup, discrete_energy(s.grid, snap, s.params.rho_bar,
                                          s.law) +
                              snap.dissipation.total());
    }
    return sup - rr.trajectory.initial_energy;
  };
  const double coarse = margin_at(400, 0.4);
  const double fine = margin_at(800, 0.2);
  CHECK(fine < coarse);
  CHECK(fine < 0.6 * coarse);
}

TEST_CASE("runs are deterministic bit for bit") {
  Setup s(1e-2, 200, 200);
  SolverConfig cfg;
  cfg.t_final = 0.1;
  cfg.n_snapshots = 11;
  const auto init = s.bump_init();
  const auto r1 = run(init, cfg, s.params, s.law, s.grid);
  const auto r2 = run(init, cfg, s.params, s.law, s.grid);
  REQUIRE(r1.ok);
  REQUIRE(r2.ok);
  REQUIRE(r1.trajectory.snapshots.size() == r2.trajectory.snapshots.size());
  for (std::size_t k = 0; k < r1.trajectory.snapshots.size(); ++k) {
    const auto& a = r1.trajectory.snapshots[k];
    const auto& b = r2.trajectory.snapshots[k];
    CHECK(a.t == b.t);
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      CHECK(a.rho[i] == b.rho[i]);
      CHECK(a.m[i] == b.m[i]);
    }
  }
}

TEST_CASE("density floor breach aborts with time and location") {
  Setup s(1e-2, 300, 300);
  // strong outflow drains the inner region
  const auto init = prepare_initial_data(
      gaussian_bump_profile(s.params.rho_bar, 0.2, 0.4, 0.1),
      gaussian_bump_profile(0.0, 0.3, 0.4, 0.1), s.params, s.grid, s.law);
  SolverConfig cfg;
  cfg.t_final = 0.5;
  cfg.density_floor = 0.5 * s.params.rho_bar;
  const auto rr = run(init, cfg, s.params, s.law, s.grid);
  CHECK_FALSE(rr.ok);
  CHECK(rr.error.find("floor") != std::string::npos);
  CHECK(rr.error_time > 0.0);
  CHECK(rr.error_node >= 0);
  // partial trajectory is attached
  CHECK(rr.trajectory.snapshots.size() >= 1);
}

TEST_CASE("boundary traces vanish at every snapshot") {
  Setup s;
  SolverConfig cfg;
  cfg.t_final = 0.2;
  cfg.n_snapshots = 21;
  const auto rr = run(s.bump_init(), cfg, s.params, s.law, s.grid);
  REQUIRE(rr.ok);
  for (const auto& snap : rr.trajectory.snapshots) {
    CHECK(std::abs(one_sided_derivative(s.grid, snap.rho, -1)) < 1e-8);
    CHECK(std::abs(snap.m.front()) < 1e-8);
    CHECK(std::abs(snap.m.back()) < 1e-8);
    CHECK(std::abs(snap.rho.back() - s.params.rho_bar) < 1e-8);
  }
}

TEST_CASE("snapshots land on the requested times") {
  Setup s(1e-2, 200, 200);
  SolverConfig cfg;
  cfg.t_final = 0.1;
  cfg.snapshot_times = {0.0, 0.013, 0.057, 0.1};
  const auto rr = run(s.bump_init(0.3), cfg, s.params, s.law, s.grid);
  REQUIRE(rr.ok);
  REQUIRE(rr.trajectory.snapshots.size() == 4);
  for (std::size_t k = 0; k < 4; ++k)
    CHECK(std::abs(rr.trajectory.snapshots[k].t - cfg.snapshot_times[k]) <
          1e-12);
}

TEST_CASE("zero final time yields the initial state only") {
  Setup s(1e-2, 200, 200);
  SolverConfig cfg;
  cfg.t_final = 0.0;
  const auto rr = run(s.bump_init(0.3), cfg, s.params, s.law, s.grid);
  REQUIRE(rr.ok);
  CHECK(rr.trajectory.snapshots.size() == 1);
  CHECK(rr.trajectory.snapshots[0].t == 0.0);
  CHECK(rr.trajectory.steps_taken == 0);
}

TEST_CASE("second-order reconstruction runs stably") {
  Setup s(1e-2, 400, 400);
  SolverConfig cfg;
  cfg.t_final = 0.2;
  cfg.second_order = true;
  const auto rr = run(s.bump_init(), cfg, s.params, s.law, s.grid);
  REQUIRE(rr.ok);
  CHECK(rr.trajectory.c_eps > 0.0);
}

TEST_CASE("config validation") {
  Setup s(1e-2, 200, 200);
  SolverConfig cfg;
  cfg.cfl = 1.5;
  CHECK_THROWS_AS(Stepper(cfg, s.params, s.law, s.grid), ConfigError);
  SolverConfig ok;
  GasLaw mismatched = GasLaw::make(2.0, 0.123);
  CHECK_THROWS_AS(Stepper(ok, s.params, mismatched, s.grid), ConfigError);
}
