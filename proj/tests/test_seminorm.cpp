#include <gnlab/errors.hpp>
#include <gnlab/seminorm.hpp>

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace gnlab;
using test_support::rel_err;

TEST_CASE("closed-form seminorms of the unit paraboloid") {
  const auto u = profiles::paraboloid(2);
  const auto h = WeightSpec::constant();
  // θ_2 ∫ 4 s^2 s ds and θ_2 ∫ 4 (1 - s^2) s ds
  CHECK(rel_err(weighted_seminorm(u, Integrand::grad_p_h, 2.0, h).value, 2 * std::numbers::pi) <= 1e-12);
  CHECK(rel_err(weighted_seminorm(u, Integrand::lap_T_h, 2.0, h).value, 2 * std::numbers::pi) <= 1e-12);
  // (|∇²u| |u|)^{1} = 2√2 (1 - s²)
  CHECK(rel_err(weighted_seminorm(u, Integrand::hess_T_h, 2.0, h).value, 2 * std::sqrt(2.0) * std::numbers::pi / 2) <=
        1e-12);
  // Δ_∞ u = -2, ♠ = 2: π each
  CHECK(rel_err(weighted_seminorm(u, Integrand::inf_T_h, 2.0, h).value, std::numbers::pi) <= 1e-12);
  CHECK(rel_err(weighted_seminorm(u, Integrand::spade_T_h, 2.0, h).value, std::numbers::pi) <= 1e-12);
}

TEST_CASE("integration by parts at p = 2") {
  const std::vector<RadialField> fields{profiles::paraboloid(2), profiles::paraboloid(5, 0.3),
                                        profiles::cosine_bump(3), profiles::cosine_bump(6, 2.0, 1.5)};
  const auto h = WeightSpec::constant();
  for (const auto& u : fields) {
    const auto ibp = integrate_radial(
        [&](double s) { return u.value(s) * std::fabs(laplacian(u, s)); }, u.measure());
    CHECK(rel_err(weighted_seminorm(u, Integrand::grad_p_h, 2.0, h).value, ibp.value) <= 1e-8);
  }
}

TEST_CASE("scale equivariance") {
  const auto u = profiles::paraboloid_power(3, 2.0, 0.7);
  const auto h = WeightSpec::constant();
  for (double p : {2.0, 3.0, 4.5}) {
    const double g = weighted_seminorm(u, Integrand::grad_p_h, p, h).value;
    const double l = weighted_seminorm(u, Integrand::lap_T_h, p, h).value;
    for (double c : {0.5, 2.0, 10.0}) {
      const auto v = u.scaled(c);
      CHECK(rel_err(weighted_seminorm(v, Integrand::grad_p_h, p, h).value, std::pow(c, p) * g) <= 1e-10);
      CHECK(rel_err(weighted_seminorm(v, Integrand::lap_T_h, p, h).value, std::pow(c, p) * l) <= 1e-10);
    }
  }
}

TEST_CASE("weighted seminorm with singular weights") {
  // h = λ^{-1/2}: ∫ |∇u|^2 u^{-1/2} for u = 1 - s², n = 2 equals
  // 2π ∫ 4 s^3 (1-s²)^{-1/2} ds = 2π · 8/3
  const auto u = profiles::paraboloid(2);
  const auto r = weighted_seminorm(u, Integrand::grad_p_h, 2.0, WeightSpec::power_law(-0.5));
  // the inverse square root sits at the outer radius, where bisection runs
  // into the spacing of doubles near 1; the estimate must cover the true error
  const double exact = 2 * std::numbers::pi * 8.0 / 3.0;
  CHECK(std::fabs(r.value - exact) <= r.abs_error_estimate);
  CHECK(rel_err(r.value, exact) <= 1e-6);
  CHECK(r.converged == (r.abs_error_estimate <= 1e-9 * r.value));

  // the same singularity at the inner end of an integral converges
  const auto left = integrate_1d([](double t) {
    return 4 * std::pow(1 - t, 1.5) / std::sqrt(t);
  }, 0.0, 1.0);
  CHECK(left.converged);
  CHECK(rel_err(left.value, 1.5 * std::numbers::pi) <= 1e-8);  // 4 B(1/2, 5/2)
}

TEST_CASE("the hardy-type integrands") {
  // h ≡ 1, C = 0: |u|^p / s^p and the same for the finiteness condition
  const auto u = profiles::paraboloid(3, 0.5);
  const auto h = WeightSpec::constant();
  const double s = 0.4;
  const double w = u.value(s);
  CHECK(integrand_value(u, Integrand::hardy_T_h, 3.0, h, s) == doctest::Approx(std::pow(w / s, 3.0)));
  CHECK(integrand_value(u, Integrand::hardy_T_h2, 3.0, h, s) == doctest::Approx(std::pow(w / s, 3.0)));
  const auto h2 = WeightSpec::constant(2.0);
  // T = λ, h = 2: (|T|/s)^p h vs |T|^p h^2 / s^p
  CHECK(integrand_value(u, Integrand::hardy_T_h, 3.0, h2, s) == doctest::Approx(2 * std::pow(w / s, 3.0)));
  CHECK(integrand_value(u, Integrand::hardy_T_h2, 3.0, h2, s) == doctest::Approx(4 * std::pow(w / s, 3.0)));
}

TEST_CASE("range violations") {
  const auto u = profiles::paraboloid(2);
  CHECK_THROWS_AS(weighted_seminorm(u, Integrand::grad_p_h, 2.0, WeightSpec::power_law(1.0, 0.0, 0.5)),
                  DomainError);
}

TEST_CASE("integrand names round trip") {
  for (Integrand i : {Integrand::grad_p_h, Integrand::hess_T_h, Integrand::lap_T_h, Integrand::inf_T_h,
                      Integrand::spade_T_h, Integrand::hardy_T_h, Integrand::hardy_T_h2}) {
    CHECK(integrand_from_string(to_string(i)) == i);
  }
  CHECK_THROWS(integrand_from_string("nope"));
}

TEST_CASE("operator power integrals") {
  const auto u = profiles::paraboloid(2);
  // ∫ (1-s²)² dx = π/3 and ∫ |Δu|² dx = 16 π
  CHECK(rel_err(operator_power_integral(u, Operator::value, 2.0).value, std::numbers::pi / 3) <= 1e-12);
  CHECK(rel_err(operator_power_integral(u, Operator::laplacian, 2.0).value, 16 * std::numbers::pi) <= 1e-12);
  CHECK(rel_err(operator_power_integral(u, Operator::spade, 2.0).value, 4 * std::numbers::pi) <= 1e-12);
  CHECK(rel_err(operator_power_integral(u, Operator::grad, 2.0).value, 2 * std::numbers::pi) <= 1e-12);
}
