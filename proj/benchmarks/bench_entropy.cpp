#include <benchmark/benchmark.h>

#include "spheuler/entropy.hpp"

namespace {

using namespace spheuler;

void BM_EntropyPair(benchmark::State& state) {
  const EntropyKernel kernel(GasLaw::make(2.0),
                             {.order = static_cast<int>(state.range(0))});
  double rho = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel.pair(rho, 0.37));
    rho = rho < 8.0 ? rho + 0.1 : 0.1;
  }
}
BENCHMARK(BM_EntropyPair)->Arg(32)->Arg(64)->Arg(128);

void BM_EntropyGradient(benchmark::State& state) {
  const EntropyKernel kernel(GasLaw::make(2.0));
  double u = -2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel.gradient(1.3, u));
    u = u < 2.0 ? u + 0.05 : -2.0;
  }
}
BENCHMARK(BM_EntropyGradient);

void BM_EntropyHessian(benchmark::State& state) {
  const EntropyKernel kernel(GasLaw::make(2.0));
  double u = -2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel.hessian(1.3, u));
    u = u < 2.0 ? u + 0.05 : -2.0;
  }
}
BENCHMARK(BM_EntropyHessian);

void BM_BoundSuite(benchmark::State& state) {
  const EntropyKernel kernel(GasLaw::make(2.0));
  EntropySampleSpec spec;
  spec.n_rho = static_cast<int>(state.range(0));
  spec.n_u = spec.n_rho;
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_entropy_bounds(spec, 0.5, kernel));
  }
  state.SetItemsProcessed(state.iterations() * spec.n_rho * spec.n_u);
}
BENCHMARK(BM_BoundSuite)->Arg(20)->Arg(50);

}  // namespace
