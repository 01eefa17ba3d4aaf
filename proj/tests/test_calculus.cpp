#include <gnlab/calculus.hpp>
#include <gnlab/errors.hpp>
#include <gnlab/spline.hpp>

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace gnlab;
using test_support::free_field;
using test_support::rel_err;

namespace {

// 1 - s^{2-n} (n >= 3) or log s on 1 < s < R
RadialField harmonic(int n, double R = 10.0) { return profiles::harmonic_annulus(n, R); }

}  // namespace

TEST_CASE("gradient examples") {
  CHECK(grad_norm(profiles::paraboloid(2), 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(grad_norm(harmonic(3), 2.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(grad_norm(harmonic(2), std::exp(1.0)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("laplacian examples") {
  const auto u = profiles::paraboloid(2);
  for (double s : {0.0, 0.1, 0.5, 0.99}) CHECK(laplacian(u, s) == doctest::Approx(-4.0).epsilon(1e-14));
  CHECK(std::fabs(laplacian(harmonic(3), 2.0)) <= 1e-15);
  const auto cube = free_field([](const Jet2& s) { return s * s * s; }, 4, 0.5, 2.0, "s^3");
  CHECK(laplacian(cube, 1.0) == doctest::Approx(15.0).epsilon(1e-14));
}

TEST_CASE("infinity laplacian examples") {
  CHECK(infinity_laplacian(profiles::paraboloid(2), 0.3) == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(infinity_laplacian(harmonic(3), 2.0) == doctest::Approx(-0.25).epsilon(1e-14));
  // critical point at the center and at an interior radius
  CHECK(infinity_laplacian(profiles::paraboloid(2), 0.0) == 0.0);
  const auto dip = free_field([](const Jet2& s) { return (s - 0.5) * (s - 0.5) + 1.0; }, 3, 0.1, 1.0, "dip");
  CHECK(infinity_laplacian(dip, 0.5) == 0.0);
  CHECK(laplacian(dip, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("spade examples") {
  CHECK(spade(profiles::paraboloid(2), 0.5) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(spade(profiles::paraboloid(5), 0.5) == doctest::Approx(8.0).epsilon(1e-14));
  const auto flat = free_field([](const Jet2& s) { return 0.0 * s + 0.3; }, 3, 0.0, 1.0, "const");
  CHECK(spade(flat, 0.4) == 0.0);
  CHECK(laplacian(flat, 0.4) == 0.0);
}

TEST_CASE("hessian examples") {
  CHECK(hessian_frobenius(profiles::paraboloid(2), 0.7) == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(hessian_frobenius(profiles::paraboloid(2), 0.0) == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(hessian_frobenius(harmonic(3), 1.0) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-14));
}

TEST_CASE("operators reject radii outside the domain") {
  const auto u = profiles::paraboloid(3);
  CHECK_THROWS_AS(grad_norm(u, 1.5), DomainError);
  CHECK_THROWS_AS(laplacian(u, -0.1), DomainError);
  CHECK_THROWS_AS(infinity_laplacian(harmonic(3), 0.5), DomainError);
  CHECK_THROWS_AS(spade(harmonic(3), 11.0), DomainError);
  CHECK_THROWS_AS(hessian_frobenius(u, 2.0), DomainError);
}

TEST_CASE("field construction is validated") {
  CHECK_THROWS_AS(profiles::paraboloid(1), DomainError);
  // not zero on the boundary
  CHECK_THROWS_AS(RadialField([](const Jet2& s) { return 2.0 - s * s; }, 2, 0.0, 1.0, kInfinity, "x"),
                  DomainError);
  // cone: w'(0) != 0
  CHECK_THROWS_AS(RadialField([](const Jet2& s) { return 1.0 - s; }, 2, 0.0, 1.0, kInfinity, "cone"),
                  DomainError);
  // leaves (0, B)
  CHECK_THROWS_AS(profiles::paraboloid(2, 2.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(RadialField([](const Jet2& s) { return s; }, 2, 1.0, 1.0, kInfinity, "empty"), DomainError);
}

TEST_CASE("boundary flux") {
  CHECK(boundary_flux(profiles::paraboloid(3), 3.0, WeightSpec::constant()) == 0.0);
  CHECK(boundary_flux(profiles::paraboloid(3), 3.0, WeightSpec::constant(1.0, -0.5)) < 0.0);
  for (int n : {2, 3, 4}) {
    // Φ_3(-2) H_{-1}(0) r^{n-1} θ_n = -4 θ_n
    CHECK(boundary_flux(profiles::paraboloid(n), 3.0, WeightSpec::constant(1.0, -1.0)) ==
          doctest::Approx(-4 * unit_sphere_measure(n)).epsilon(1e-14));
  }
  CHECK(phi_p(0.0, 3.0) == 0.0);
  CHECK(phi_p(-2.0, 3.0) == -4.0);
  CHECK(phi_p(3.0, 2.0) == 3.0);
}

TEST_CASE("flux of Dirichlet fields with C <= 0 is non-positive") {
  const std::vector<RadialField> fields{profiles::paraboloid(2, 0.5), profiles::paraboloid_power(3, 2.0, 0.5),
                                        profiles::cosine_bump(5, 0.5), profiles::paraboloid_power(4, 1.5)};
  for (const auto& f : fields) {
    for (double p : {2.0, 2.5, 4.0}) {
      for (double C : {0.0, -0.1, -2.0}) {
        CHECK(boundary_flux(f, p, WeightSpec::power_law(1.0, C, 1.0)) <= 0.0);
      }
    }
  }
}

TEST_CASE("jets match finite differences") {
  const std::vector<RadialField> fields{
      profiles::paraboloid(2, 0.7, 1.3),   profiles::paraboloid_power(3, 2.0),
      profiles::paraboloid_power(5, 3.5),  profiles::cosine_bump(4, 0.5, 2.0),
      harmonic(2),                         harmonic(3),
      harmonic(6)};
  std::mt19937 rng(12345);
  for (const auto& f : fields) {
    CAPTURE(f.descriptor());
    std::uniform_real_distribution<double> pick(f.r_in() + 0.01 * (f.r_out() - f.r_in()),
                                                f.r_out() - 0.01 * (f.r_out() - f.r_in()));
    for (int i = 0; i < 100; ++i) {
      const double s = pick(rng);
      const double h = 1e-5;
      const Jet2 j = f.jet(s);
      const double d1 = (f.value(s + h) - f.value(s - h)) / (2 * h);
      const double d2 = (f.jet(s + h).d1 - f.jet(s - h).d1) / (2 * h);
      CHECK(std::fabs(j.d1 - d1) <= 1e-6 * std::max(1.0, std::fabs(j.d1)));
      CHECK(std::fabs(j.d2 - d2) <= 1e-6 * std::max(1.0, std::fabs(j.d2)));
    }
  }
}

TEST_CASE("pointwise operator relations") {
  const std::vector<RadialField> fields{profiles::paraboloid(2), profiles::paraboloid_power(3, 2.0),
                                        profiles::cosine_bump(5), harmonic(3), harmonic(2)};
  for (const auto& f : fields) {
    for (double s : f.probe_radii(200)) {
      const RadialOps o = radial_ops(f, s);
      CHECK(std::fabs(o.infinity_laplacian - o.laplacian - o.spade) <= 1e-14 * std::max(1.0, std::fabs(o.laplacian)));
      CHECK(std::fabs(o.infinity_laplacian) <= o.hessian * (1 + 1e-15));
      CHECK(std::fabs(o.laplacian) <= std::sqrt(static_cast<double>(f.n())) * o.hessian * (1 + 1e-14));
    }
  }
}

TEST_CASE("harmonic profiles have vanishing laplacian") {
  for (int n : {2, 3, 4, 7}) {
    const auto f = harmonic(n);
    for (double s : f.probe_radii(1000)) CHECK(std::fabs(laplacian(f, s)) <= 1e-10);
  }
}

TEST_CASE("composition with the identity map") {
  const auto v = profiles::cosine_bump(3, 0.5);
  const auto c = compose(v, [](const Jet2& l) { return l; }, "id");
  for (double s : v.probe_radii(50)) {
    const RadialOps a = radial_ops(v, s);
    const RadialOps b = radial_ops(c, s);
    CHECK(a.w == b.w);
    CHECK(a.laplacian == b.laplacian);
    CHECK(a.hessian == b.hessian);
  }
  CHECK(c.dirichlet());
}

TEST_CASE("composition identities") {
  struct Map {
    JetMap Wt;
    ScalarMap W, dW;
  };
  const std::vector<Map> maps{
      {[](const Jet2& l) { return 1.0 - sqrt(1.0 - l); }, [](double l) { return 0.5 / std::sqrt(1 - l); },
       [](double l) { return 0.25 / std::pow(1 - l, 1.5); }},
      {[](const Jet2& l) { return l * l * l; }, [](double l) { return 3 * l * l; }, [](double l) { return 6 * l; }},
      {[](const Jet2& l) { return exp(l) - 1.0; }, [](double l) { return std::exp(l); },
       [](double l) { return std::exp(l); }}};
  const std::vector<RadialField> fields{profiles::paraboloid(2, 0.5), profiles::paraboloid_power(4, 2.0, 0.5),
                                        profiles::cosine_bump(3, 0.9)};
  for (const auto& v : fields) {
    for (const auto& m : maps) {
      const auto c = compose(v, m.Wt, "W");
      for (double s : v.probe_radii(100)) CHECK(composition_residuals(v, c, m.W, m.dW, s).max() <= 1e-8);
    }
  }
  CHECK_THROWS_AS(compose(profiles::paraboloid(2, 0.5, 1.0, 0.4), maps[0].Wt, "W"), DomainError);
}

TEST_CASE("scaled fields") {
  const auto u = profiles::paraboloid(3, 0.5, 1.0, 1.0);
  const auto v = u.scaled(2.0);
  CHECK(v.value(0.3) == doctest::Approx(2 * u.value(0.3)));
  CHECK(v.B() == 2.0);
}

TEST_CASE("cubic spline") {
  std::vector<double> x, y;
  for (int i = 0; i <= 12; ++i) {
    const double t = -1.0 + 2.0 * i / 12 + (i % 3 == 1 ? 0.03 : 0.0);
    x.push_back(t);
    y.push_back(2 * t * t * t - t * t + 0.5 * t - 3);
  }
  const CubicSpline sp(x, y);
  // not-a-knot ends reproduce cubics exactly
  for (double t : {-0.97, -0.5, 0.0, 0.123, 0.9}) {
    CHECK(sp.value(t) == doctest::Approx(2 * t * t * t - t * t + 0.5 * t - 3).epsilon(1e-12));
    CHECK(sp.d1(t) == doctest::Approx(6 * t * t - 2 * t + 0.5).epsilon(1e-11));
    CHECK(sp.d2(t) == doctest::Approx(12 * t - 2).epsilon(1e-10));
  }
  CHECK_THROWS_AS(sp.value(1.5), DomainError);
  CHECK_THROWS_AS(CubicSpline({0.0, 1.0, 0.5, 2.0}, {0, 0, 0, 0}), DomainError);
}
