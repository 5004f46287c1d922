#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "support/oracles.hpp"
#include "tlab/quadrature.hpp"

using namespace tlab;

TEST_CASE("polynomial is integrated to machine precision") {
  auto r = integrate_adaptive([](double x) { return x * x * x - 2.0 * x + 1.0; }, -1.0, 2.0);
  // exact: [x^4/4 - x^2 + x] from -1 to 2 = 3.75 - (-1.75) ... compute directly
  const double exact = (16.0 / 4.0 - 4.0 + 2.0) - (1.0 / 4.0 - 1.0 - 1.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("oscillatory integrand converges within tolerance") {
  auto r = integrate_adaptive([](double x) { return std::sin(50.0 * x); }, 0.0, 1.0, 1e-13);
  const double exact = (1.0 - std::cos(50.0)) / 50.0;
  CHECK(r.converged);
  CHECK(std::abs(r.value - exact) < 1e-12);
  CHECK(r.intervals > 1);
}

TEST_CASE("near-singular endpoint behaviour stays adaptive") {
  // integrand ~ 1/sqrt(x) near 0: exact value 2
  auto r = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x + 1e-12); }, 0.0, 1.0, 1e-10,
                              20000);
  CHECK(std::abs(r.value - 2.0) < 1e-5);
}

TEST_CASE("error estimate bounds the true error on a smooth integrand") {
  auto r = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0);
  const double exact = std::exp(1.0) - 1.0;
  CHECK(std::abs(r.value - exact) <= std::max(r.error_estimate * 10.0, 1e-13));
}

TEST_CASE("frozen moment constants match their closed forms") {
  // the decimal constants pinned in the study suites, re-derived here
  CHECK(oracles::moment_I0() == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(oracles::moment_I2() == doctest::Approx(0.01500569516765417).epsilon(1e-14));
  CHECK(oracles::moment_I4() == doctest::Approx(0.0007862120067594235).epsilon(1e-12));
  CHECK(oracles::moment_combination() == doctest::Approx(-0.12359448316089475).epsilon(1e-14));
  // the combination sits strictly away from the stationarity value -1/8
  CHECK(std::abs(oracles::moment_combination() - (-0.125)) > 1e-3);
}
