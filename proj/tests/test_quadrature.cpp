// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sojourn/quadrature.hpp"
#include "sojourn/specfun.hpp"

namespace quad = sojourn::quadrature;

TEST_CASE("polynomials and smooth integrands", "[quadrature]") {
  CHECK(quad::integrate([](double x) { return x * x; }, 0.0, 1.0) ==
        Catch::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(quad::integrate([](double x) { return std::sin(x); }, 0.0, sojourn::specfun::kPi) ==
        Catch::Approx(2.0).epsilon(1e-12));
  CHECK(quad::integrate([](double x) { return std::exp(-x); }, 0.0, 50.0) ==
        Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("orientation and degenerate interval", "[quadrature]") {
  CHECK(quad::integrate([](double x) { return x; }, 1.0, 0.0) ==
        Catch::Approx(-0.5).epsilon(1e-13));
  CHECK(quad::integrate([](double) { return 7.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("integrable endpoint singularity", "[quadrature]") {
  const double v = quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10,
                                   1e-9, 20000);
  CHECK(v == Catch::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("failure is reported, not clamped", "[quadrature]") {
  // a step discontinuity (off the dyadic bisection points) with an absurd
  // tolerance and a tiny interval budget
  auto f = [](double x) { return x < 0.37 ? 0.0 : 1.0; };
  CHECK_THROWS_AS(quad::integrate(f, 0.0, 1.0, 1e-300, 1e-300, 8), std::runtime_error);
  const auto r = quad::integrate_result(f, 0.0, 1.0, 1e-300, 1e-300, 8);
  CHECK_FALSE(r.converged);
  CHECK(r.value == Catch::Approx(0.63).margin(1e-3));
}
