#include <doctest.h>

#include <cmath>
#include <random>

#include "spheuler/gas_law.hpp"

using namespace spheuler;

TEST_CASE("derived constants follow the normalization") {
  const GasLaw law2 = GasLaw::make(2.0);
  CHECK(law2.kappa == doctest::Approx(1.0 / 8.0).epsilon(1e-15));
  CHECK(law2.theta == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(law2.lambda_kernel == doctest::Approx(0.5).epsilon(1e-15));

  const GasLaw law3 = GasLaw::make(3.0);
  CHECK(law3.kappa == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(law3.theta == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(law3.lambda_kernel == 0.0);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> gamma_dist(1.0 + 1e-6, 5.0);
  for (int i = 0; i < 100; ++i) {
    const double g = gamma_dist(rng);
    const GasLaw law = GasLaw::make(g);
    CHECK(law.kappa == (g - 1.0) * (g - 1.0) / (4.0 * g));
    CHECK(law.theta == 0.5 * (g - 1.0));
    CHECK(law.lambda_kernel == (3.0 - g) / (2.0 * (g - 1.0)));
    CHECK(law.lambda_kernel > -0.5);
  }

  CHECK_THROWS_AS(GasLaw::make(1.0), DomainError);
  CHECK_THROWS_AS(GasLaw::make(0.5), DomainError);
  CHECK_THROWS_AS(GasLaw::make(2.0, -1.0), DomainError);
}

TEST_CASE("pressure values and monotonicity") {
  CHECK(pressure(0.0, GasLaw::make(2.0)) == 0.0);
  CHECK(pressure(1.0, GasLaw::make(2.0)) == doctest::Approx(1.0 / 8.0).epsilon(1e-15));
  CHECK(pressure(2.0, GasLaw::make(3.0)) == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(pressure(-1.0, GasLaw::make(2.0)), DomainError);

  // delta rho^2 term
  const GasLaw with_delta = GasLaw::make(2.0, 0.5);
  CHECK(pressure(2.0, with_delta) == doctest::Approx(0.5 + 2.0).epsilon(1e-15));

  const GasLaw law = GasLaw::make(1.7, 1e-3);
  double prev = pressure(0.0, law);
  for (double rho = 0.05; rho < 10.0; rho += 0.05) {
    const double p = pressure(rho, law);
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("pressure is convex in rho") {
  for (double gamma : {1.4, 2.0, 3.0, 4.2}) {
    const GasLaw law = GasLaw::make(gamma, 1e-2);
    const double h = 1e-3;
    for (double rho = 0.1; rho < 8.0; rho += 0.17) {
      const double second = pressure(rho + h, law) - 2.0 * pressure(rho, law) +
                            pressure(rho - h, law);
      CHECK(second >= -1e-14);
    }
  }
}

TEST_CASE("relative internal energy") {
  const GasLaw law2 = GasLaw::make(2.0);
  CHECK(relative_internal_energy(0.7, 0.7, law2) == 0.0);
  // rho_bar = 0 reduces to h itself
  CHECK(relative_internal_energy(1.0, 0.0, law2) ==
        doctest::Approx(1.0 / 8.0).epsilon(1e-15));
  CHECK_THROWS_AS(relative_internal_energy(-0.1, 0.0, law2), DomainError);
  CHECK_THROWS_AS(relative_internal_energy(0.1, -1.0, law2), DomainError);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(0.0, 6.0);
  for (double gamma : {1.5, 2.0, 3.0}) {
    const GasLaw law = GasLaw::make(gamma, 1e-4);
    for (int i = 0; i < 500; ++i) {
      const double rho = d(rng);
      const double rho_bar = d(rng);
      const double h = relative_internal_energy(rho, rho_bar, law);
      CHECK(h >= 0.0);
      if (std::abs(rho - rho_bar) > 1e-2) CHECK(h > 0.0);
    }
  }
}

TEST_CASE("dominating constant from the dense scan") {
  const GasLaw law = GasLaw::make(2.0);

  // Independent oracle: same ratio scanned with an explicit loop.
  const long n = 100000;
  double worst = 0.0;
  for (long i = 0; i <= n; ++i) {
    const double rho = 100.0 * static_cast<double>(i) / n;
    const double ratio = (rho + rho * rho) / (law.kappa * rho * rho + 1.0);
    worst = std::max(worst, ratio);
  }
  const double expected = 1.05 * worst;

  const double got = dominating_constant(100.0, 0.0, law, n);
  CHECK(got == doctest::Approx(expected).epsilon(1e-12));
  // The inequality actually holds on the sample with the reported constant.
  for (long i = 0; i <= 1000; ++i) {
    const double rho = 100.0 * static_cast<double>(i) / 1000;
    CHECK(rho + std::pow(rho, law.gamma) <=
          got * (relative_internal_energy(rho, 0.0, law) + 1.0) + 1e-12);
  }
}

TEST_CASE("dominating constant is monotone in rho_max on nested lattices") {
  const GasLaw law = GasLaw::make(2.3, 0.0);
  const double m50 = dominating_constant(50.0, 0.4, law, 50000);
  const double m100 = dominating_constant(100.0, 0.4, law, 100000);
  CHECK(m100 >= m50);
  CHECK_THROWS_AS(dominating_constant(0.0, 0.0, law), DomainError);
  CHECK_THROWS_AS(dominating_constant(1.0, 200.0, law), DomainError);
}
