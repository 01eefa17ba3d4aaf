#include <gnlab/errors.hpp>
#include <gnlab/quadrature.hpp>

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

using namespace gnlab;
using test_support::rel_err;

TEST_CASE("integrate_1d closed forms") {
  const auto lin = integrate_1d([](double s) { return s; }, 0.0, 1.0);
  CHECK(std::fabs(lin.value - 0.5) <= 1e-12);
  CHECK(lin.converged);

  const auto cubic = integrate_1d([](double s) { return 4 * s * s * s; }, 0.0, 1.0);
  CHECK(std::fabs(cubic.value - 1.0) <= 1e-12);

  // antiderivative 2 sqrt(s)
  const auto sing = integrate_1d([](double s) { return 1.0 / std::sqrt(s); }, 0.0, 1.0);
  CHECK(std::fabs(sing.value - 2.0) <= 1e-8);
  CHECK(sing.converged);

  // log singularity at the right end: ∫_0^1 -log(1-s) ds = 1
  const auto right = integrate_1d([](double s) { return -std::log1p(-s); }, 0.0, 1.0);
  CHECK(std::fabs(right.value - 1.0) <= 1e-9);

  CHECK_THROWS_AS(integrate_1d([](double s) { return s; }, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(integrate_1d([](double s) { return s; }, 1.0, 1.0), DomainError);
}

TEST_CASE("integrate_1d with breakpoints") {
  // |s - 1/3| has a kink at 1/3; ∫_0^1 = 1/18 + 2/9 = 5/18
  const std::vector<double> bp{0.0, 1.0 / 3.0, 1.0};
  const auto r = integrate_1d([](double s) { return std::fabs(s - 1.0 / 3.0); }, bp);
  CHECK(rel_err(r.value, 5.0 / 18.0) <= 1e-13);
}

TEST_CASE("budget exhaustion reports converged = false") {
  QuadOptions opt;
  opt.max_panels = 20;
  opt.rel_tol = 1e-15;
  opt.abs_tol = 0.0;
  const auto r = integrate_1d([](double s) { return std::sin(200 * s); }, 0.0, 10.0, opt);
  CHECK_FALSE(r.converged);
  CHECK(r.panels_used <= 20);
}

TEST_CASE("non-integrable singularity is not converged") {
  const auto r = integrate_1d([](double s) { return 1.0 / s; }, 0.0, 1.0);
  CHECK_FALSE(r.converged);
}

TEST_CASE("NaN samples throw") {
  CHECK_THROWS_AS(integrate_1d([](double) { return std::numeric_limits<double>::quiet_NaN(); }, 0.0, 1.0),
                  NonFiniteError);
}

TEST_CASE("unit sphere measure") {
  CHECK(rel_err(unit_sphere_measure(2), 2 * std::numbers::pi) <= 1e-15);
  CHECK(rel_err(unit_sphere_measure(3), 4 * std::numbers::pi) <= 1e-15);
  CHECK(rel_err(unit_sphere_measure(4), 2 * std::numbers::pi * std::numbers::pi) <= 1e-15);
}

TEST_CASE("radial volume identities") {
  const double pi = std::numbers::pi;
  CHECK(rel_err(integrate_radial([](double) { return 1.0; }, make_radial_measure(2, 0, 1)).value, pi) <= 1e-12);
  CHECK(rel_err(integrate_radial([](double) { return 1.0; }, make_radial_measure(3, 0, 1)).value, 4 * pi / 3) <=
        1e-12);
  // hand values of the unit ball volume, n = 2..8
  const double vol[] = {pi, 4 * pi / 3, pi * pi / 2, 8 * pi * pi / 15, pi * pi * pi / 6,
                        16 * pi * pi * pi / 105, pi * pi * pi * pi / 24};
  for (int n = 2; n <= 8; ++n) {
    CAPTURE(n);
    const auto ball = integrate_radial([](double) { return 1.0; }, make_radial_measure(n, 0.0, 1.0));
    CHECK(rel_err(ball.value, vol[n - 2]) <= 1e-10);
    const auto ann = integrate_radial([](double) { return 1.0; }, make_radial_measure(n, 0.5, 2.0));
    CHECK(rel_err(ann.value, vol[n - 2] * (std::pow(2.0, n) - std::pow(0.5, n))) <= 1e-10);
  }
}

TEST_CASE("gradient of the harmonic counterexample") {
  // |∇(1 - 1/s)|^3 = s^{-6}; 4π ∫_1^10 s^{-4} ds = (4π/3)(1 - 10^{-3})
  const auto r = integrate_radial([](double s) { return std::pow(s, -6.0); }, make_radial_measure(3, 1.0, 10.0));
  CHECK(rel_err(r.value, 4 * std::numbers::pi / 3 * (1 - 1e-3)) <= 1e-10);
}

TEST_CASE("doubling the panel budget never increases the error estimate") {
  const std::vector<ScalarMap> fs{[](double s) { return 1.0 / std::sqrt(s); },
                                  [](double s) { return std::sin(30 * s) * std::exp(s); },
                                  [](double s) { return std::pow(s, -0.9); },
                                  [](double s) { return std::fabs(std::cos(7 * s)); }};
  for (std::size_t i = 0; i < fs.size(); ++i) {
    CAPTURE(i);
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t budget = 16; budget <= 4096; budget *= 2) {
      QuadOptions opt;
      opt.max_panels = budget;
      opt.rel_tol = 1e-14;
      opt.abs_tol = 0.0;
      const auto r = integrate_1d(fs[i], 0.0, 1.0, opt);
      CHECK(r.abs_error_estimate <= prev);
      prev = r.abs_error_estimate;
    }
  }
}
