#include <doctest.h>

#include <cmath>

#include "beamlab/error.hpp"
#include "beamlab/quadrature.hpp"

using namespace beamlab;

TEST_CASE("gauss rule integrates high-degree polynomials exactly") {
  // 15-point rule is exact through degree 29
  auto f = [](double x) { return std::pow(x, 28) - 3.0 * std::pow(x, 13) + x; };
  const double exact = 2.0 / 29.0; // odd parts cancel on [-1,1]
  CHECK(integrate_gauss(f, -1.0, 1.0, 15) == doctest::Approx(exact).epsilon(1e-14));

  // weights sum to interval length
  const GaussRule& rule = gauss_rule(15);
  double wsum = 0.0;
  for (double w : rule.weights) wsum += w;
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("gauss rule rejects out-of-range orders") {
  CHECK_THROWS_AS(gauss_rule(0), Error);
  CHECK_THROWS_AS(gauss_rule(200), Error);
}

TEST_CASE("adaptive quadrature handles mild power singularities") {
  for (double a : {0.5, 1.0, 2.0, 3.5}) {
    const double got =
        integrate_adaptive([a](double x) { return std::pow(x, a); }, 0.0, 1.0,
                           1e-12);
    CHECK(got == doctest::Approx(1.0 / (a + 1.0)).epsilon(1e-11));
  }
}

TEST_CASE("adaptive quadrature rejects bad tolerance") {
  CHECK_THROWS_AS(integrate_adaptive([](double) { return 1.0; }, 0, 1, 0.0),
                  Error);
}

TEST_CASE("singular-left integration of x^p for p in (-1,0)") {
  for (double p : {-0.3, -0.5, -0.9}) {
    const double got = integrate_singular_left(
        [p](double x) { return std::pow(x, p); }, 1.0, 1e-10);
    CHECK(got == doctest::Approx(1.0 / (p + 1.0)).epsilon(1e-8));
  }
}

TEST_CASE("singular-left integration matches adaptive for smooth integrands") {
  auto f = [](double x) { return std::cos(3.0 * x) + x * x; };
  const double a = integrate_adaptive(f, 0.0, 1.0, 1e-12);
  const double b = integrate_singular_left(f, 1.0, 1e-10);
  CHECK(a == doctest::Approx(b).epsilon(1e-9));
}
