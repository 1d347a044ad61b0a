#include <doctest.h>

#include <cmath>

#include "spheuler/field.hpp"
#include "spheuler/grid.hpp"

using namespace spheuler;

TEST_CASE("truncated grid layout") {
  const RadialGrid grid = make_truncated_grid(0.1, 1.8, 3, 40, 30);
  CHECK(grid.size() == 71);
  CHECK(grid.inner_radius() == 0.1);
  CHECK(grid.outer_radius() == 1.8);
  CHECK(grid.node(40) == doctest::Approx(1.0).epsilon(1e-14));
  // log section has constant ratio, uniform section constant spacing
  const double ratio = grid.node(1) / grid.node(0);
  for (std::size_t i = 1; i < 40; ++i)
    CHECK(grid.node(i + 1) / grid.node(i) == doctest::Approx(ratio).epsilon(1e-12));
  const double h = grid.spacing(45);
  for (std::size_t i = 41; i + 1 < grid.size(); ++i)
    CHECK(grid.spacing(i) == doctest::Approx(h).epsilon(1e-10));

  CHECK_THROWS_AS(make_truncated_grid(1.2, 1.8, 3, 10, 10), DomainError);
  CHECK_THROWS_AS(make_truncated_grid(0.1, 0.8, 3, 10, 10), DomainError);
  CHECK_THROWS_AS(RadialGrid({0.1, 0.1, 0.5}, 3), DomainError);
  CHECK_THROWS_AS(RadialGrid({0.1, 0.2, 0.5}, 1), DomainError);
  CHECK_THROWS_AS(make_truncated_grid(0.1, 1.5, 3, 4, 4, 0.5), DomainError);
}

TEST_CASE("radial quadrature against closed forms") {
  const RadialGrid grid = make_truncated_grid(0.2, 1.6, 3, 2000, 2000);
  std::vector<double> one(grid.size(), 1.0);
  // int_a^b r^2 dr = (b^3 - a^3)/3
  const double expected = (std::pow(1.6, 3) - std::pow(0.2, 3)) / 3.0;
  CHECK(radial_integral(grid, one) == doctest::Approx(expected).epsilon(1e-7));

  // partial-range: int_r^b rho^g y^l with constant field
  const double r0 = 0.7123;
  CHECK(weighted_integral_from(grid, one, r0, 1) ==
        doctest::Approx((1.6 * 1.6 - r0 * r0) / 2.0).epsilon(1e-7));
  CHECK_THROWS_AS(weighted_integral_from(grid, one, 1.7, 1), DomainError);
  CHECK_THROWS_AS(weighted_integral_from(grid, one, 0.1, 1), DomainError);
}

TEST_CASE("derivatives are second order on the non-uniform grid") {
  const RadialGrid grid = make_truncated_grid(0.3, 1.5, 2, 150, 150);
  std::vector<double> f(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    f[i] = std::sin(3.0 * grid.node(i));
  const auto d = radial_derivative(grid, f);
  for (std::size_t i = 0; i < grid.size(); i += 7) {
    CHECK(d[i] == doctest::Approx(3.0 * std::cos(3.0 * grid.node(i))).epsilon(5e-4));
  }
  // one-sided stencils kill linear fields exactly
  std::vector<double> lin(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) lin[i] = 2.0 - 5.0 * grid.node(i);
  CHECK(one_sided_derivative(grid, lin, -1) == doctest::Approx(-5.0).epsilon(1e-12));
  CHECK(one_sided_derivative(grid, lin, +1) == doctest::Approx(-5.0).epsilon(1e-12));
}

TEST_CASE("discrete energy of simple fields") {
  const GasLaw law = GasLaw::make(2.0, 1e-6);
  const RadialGrid grid = make_truncated_grid(0.2, 1.4, 3, 400, 400);
  const std::size_t n = grid.size();

  // exact zero for the base state
  std::vector<double> rho(n, 0.37), m(n, 0.0);
  CHECK(discrete_energy(grid, rho, m, 0.37, law) == 0.0);

  // pure kinetic part integrates the closed form
  std::vector<double> mk(n);
  for (std::size_t i = 0; i < n; ++i) mk[i] = 0.37 * grid.node(i);
  const double e = discrete_energy(grid, rho, mk, 0.37, law);
  // 1/2 rho u^2 r^2 = 1/2 * 0.37 * r^4
  const double expected =
      0.5 * 0.37 * (std::pow(1.4, 5) - std::pow(0.2, 5)) / 5.0;
  CHECK(e == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("field validation") {
  const RadialGrid grid = make_truncated_grid(0.2, 1.4, 3, 10, 10);
  RadialField f;
  f.rho.assign(grid.size(), 1.0);
  f.m.assign(grid.size(), 0.0);
  CHECK_NOTHROW(validate_field(grid, f, 1e-10));
  f.rho[3] = 1e-12;
  CHECK_THROWS_AS(validate_field(grid, f, 1e-10), DomainError);
  f.rho[3] = std::nan("");
  CHECK_THROWS_AS(validate_field(grid, f, 1e-10), DomainError);
  f.m.pop_back();
  CHECK_THROWS_AS(validate_field(grid, f, 1e-10), DomainError);
}
