#include <benchmark/benchmark.h>

#include "spheuler/harness.hpp"
#include "spheuler/solver.hpp"

namespace {

using namespace spheuler;

struct Fixture {
  GasLaw law = GasLaw::make(2.0);
  ViscousParams params;
  RadialGrid grid;
  RadialField state;

  explicit Fixture(int nodes) {
    params = schedule(1e-2, 3, 10.0, GasLaw::make(2.0));
    law = law.with_delta(params.delta);
    grid = make_truncated_grid(params.a, params.b, 3, nodes, nodes);
    const auto init = prepare_initial_data(
        gaussian_bump_profile(params.rho_bar, 1.0, 0.5, 0.15),
        constant_profile(0.0), params, grid, law);
    state.t = 0.0;
    state.rho = init.rho0;
    state.m = init.m0;
    state.density_floor_seen = init.c_eps;
  }
};

void BM_StepperAdvance(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  SolverConfig cfg;
  Stepper stepper(cfg, f.params, f.law, f.grid);
  const double dt = stepper.stable_dt(f.state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stepper.advance(f.state, dt));
  }
  state.SetItemsProcessed(state.iterations() * f.grid.size());
}
BENCHMARK(BM_StepperAdvance)->Arg(1000)->Arg(4000)->Arg(9000);

void BM_DiscreteEnergy(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        discrete_energy(f.grid, f.state, f.params.rho_bar, f.law));
  }
}
BENCHMARK(BM_DiscreteEnergy)->Arg(1000)->Arg(9000);

void BM_HigherIntegrability(benchmark::State& state) {
  Fixture f(1000);
  SolverConfig cfg;
  cfg.t_final = 0.05;
  cfg.n_snapshots = 11;
  InitialData init;
  init.rho0 = f.state.rho;
  init.m0 = f.state.m;
  init.c_eps = f.state.density_floor_seen;
  const auto rr = run(init, cfg, f.params, f.law, f.grid);
  const SmoothCutoff omega = lemma_cutoff();
  for (auto _ : state) {
    benchmark::DoNotOptimize(higher_integrability(rr.trajectory, omega));
  }
}
BENCHMARK(BM_HigherIntegrability);

}  // namespace

BENCHMARK_MAIN();
