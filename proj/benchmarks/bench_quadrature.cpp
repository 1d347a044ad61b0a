#include <benchmark/benchmark.h>

#include <cmath>

#include "spheuler/quadrature.hpp"

namespace {

using namespace spheuler;

void BM_GaussJacobiBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gauss_jacobi(n, 0.5, 0.5));
  }
}
BENCHMARK(BM_GaussJacobiBuild)->Arg(16)->Arg(64)->Arg(128);

void BM_RuleIntegrate(benchmark::State& state) {
  const GaussRule rule = gauss_jacobi(64, 0.5, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rule.integrate([](double x) { return std::exp(x) * x; }));
  }
}
BENCHMARK(BM_RuleIntegrate);

}  // namespace
