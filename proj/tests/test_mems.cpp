#include <gnlab/errors.hpp>
#include <gnlab/mems.hpp>

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>

using namespace gnlab;
using test_support::rel_err;

namespace {

MemsConfig base(double r = 0.1, int n = 2, double q = 2.0, std::size_t grid = 512) {
  MemsConfig c;
  c.n = n;
  c.r_param = r;
  c.q = q;
  c.grid_size = grid;
  return c;
}

}  // namespace

TEST_CASE("disk solution against comparison bounds") {
  const auto sol = solve_mems(base());
  CHECK(sol.converged);
  CHECK(sol.residual_norm <= 1e-8);
  // (1-u)^{-2} >= 1 + 2u, so u dominates the solution of Δv + 0.2 v = -0.1,
  // v(0) = 0.5/J0(√0.2) - 0.5; and u <= 0.025/(1-max u)^2
  const double lower = 0.5 / std::cyl_bessel_j(0.0, std::sqrt(0.2)) - 0.5;
  CHECK(sol.max_u >= lower);
  CHECK(sol.max_u <= 0.025 / std::pow(1 - sol.max_u, 2));
  // the plain linear problem, Δv = -0.1, is about 4% below
  CHECK(std::fabs(sol.max_u / 0.025 - 1) <= 0.05);
}

TEST_CASE("discrete maximum principle and monotone continuation") {
  for (int n : {2, 3}) {
    auto cfg = base(0.3, n);
    cfg.f = {-1.0, 0.5};  // still <= 0 on the unit ball
    const auto sol = solve_mems(cfg);
    REQUIRE(sol.converged);
    for (std::size_t i = 0; i + 1 < sol.w.size(); ++i) CHECK(sol.w[i] > 0.0);
    CHECK(sol.w.back() == 0.0);
    for (std::size_t i = 1; i < sol.path.size(); ++i) CHECK(sol.path[i].max_u >= sol.path[i - 1].max_u);
    CHECK(sol.r_reached == doctest::Approx(0.3));
  }
}

TEST_CASE("second-order grid convergence") {
  const double m1 = solve_mems(base(0.1, 2, 2.0, 128)).max_u;
  const double m2 = solve_mems(base(0.1, 2, 2.0, 256)).max_u;
  const double m3 = solve_mems(base(0.1, 2, 2.0, 512)).max_u;
  const double slope = std::log2((m1 - m2) / (m2 - m3));
  CHECK(slope >= 1.8);
  CHECK(slope <= 2.2);
}

TEST_CASE("load scaling consistency") {
  auto a = base(0.2);
  auto b = base(0.1);
  b.f = {-2.0, 0.0};
  const auto sa = solve_mems(a);
  const auto sb = solve_mems(b);
  REQUIRE(sa.w.size() == sb.w.size());
  for (std::size_t i = 0; i < sa.w.size(); ++i) CHECK(std::fabs(sa.w[i] - sb.w[i]) <= 1e-9);
}

TEST_CASE("pull-in") {
  try {
    solve_mems(base(1.0));
    FAIL("expected PullInError");
  } catch (const PullInError& e) {
    // the radial disk problem loses its minimal branch near r = 0.789
    CHECK(e.last_good_r() > 0.75);
    CHECK(e.last_good_r() < 0.80);
  }
}

TEST_CASE("configuration validation") {
  auto c = base();
  c.grid_size = 10;
  CHECK_THROWS_AS(solve_mems(c), DomainError);
  c = base();
  c.q = 1.0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = base();
  c.r_param = -1;
  CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("gradient bound") {
  const auto cfg = base();
  const auto sol = solve_mems(cfg);
  const auto r = verify_mems_bound(sol, cfg);
  CHECK(r.verdict == Verdict::holds);
  CHECK(rel_err(r.rhs_compared, 0.3 * std::sqrt(std::numbers::pi)) <= 1e-8);
  CHECK(r.ratio <= 0.02);
}

TEST_CASE("gradient bound across loads and exponents") {
  for (int n : {2, 3}) {
    for (double r : {0.01, 0.05, 0.1, 0.2}) {
      for (double q : {1.5, 2.0, 3.0}) {
        auto cfg = base(r, n, q, 256);
        const auto sol = solve_mems(cfg);
        REQUIRE(sol.converged);
        CAPTURE(n);
        CAPTURE(r);
        CAPTURE(q);
        CHECK(verify_mems_bound(sol, cfg).verdict == Verdict::holds);
        CHECK(verify_composition(sol, cfg).relative_difference <= 1e-6);
      }
    }
  }
}

TEST_CASE("bound ratio vanishes linearly with the load") {
  const double r1 = verify_mems_bound(solve_mems(base(0.01)), base(0.01)).ratio;
  const double r2 = verify_mems_bound(solve_mems(base(0.001)), base(0.001)).ratio;
  CHECK(r1 / r2 == doctest::Approx(10.0).epsilon(0.05));
}

TEST_CASE("composition identity") {
  const auto cfg = base();
  const auto c = verify_composition(solve_mems(cfg), cfg);
  CHECK(c.relative_difference <= 1e-6);
  CHECK(c.lhs > 0.0);

  const auto hi = base(0.3);
  CHECK(verify_composition(solve_mems(hi), hi).relative_difference <= 1e-6);

  const auto zero = base(0.0);
  const auto z = verify_composition(solve_mems(zero), zero);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
}

TEST_CASE("solution files round trip") {
  const auto cfg = base(0.15, 3, 2.0, 128);
  const auto sol = solve_mems(cfg);
  const auto dir = std::filesystem::temp_directory_path() / "gnlab_test_mems";
  std::filesystem::create_directories(dir);
  const auto csv = save_solution(sol, cfg, dir / "sol.csv");
  CHECK(std::filesystem::exists(dir / "sol.json"));
  const auto back = load_solution(csv);
  CHECK(back.config.n == 3);
  CHECK(back.config.r_param == cfg.r_param);
  REQUIRE(back.solution.w.size() == sol.w.size());
  for (std::size_t i = 0; i < sol.w.size(); ++i) CHECK(back.solution.w[i] == sol.w[i]);
  CHECK(back.solution.converged);
  const auto a = verify_mems_bound(sol, cfg);
  const auto b = verify_mems_bound(back.solution, back.config);
  CHECK(a.ratio == b.ratio);
}

TEST_CASE("regularity recipe") {
  struct Case {
    double q, alpha, C;
  };
  for (const auto& c : {Case{2.0, -2.0, -1.0}, Case{3.0, -3.0, -0.5}, Case{1.5, -1.5, -2.0}}) {
    const auto r = recipe_check(-2.0, c.q);
    CHECK(r.alpha == c.alpha);
    CHECK(r.C == doctest::Approx(c.C).epsilon(1e-15));
    CHECK(r.g_max_deviation <= 1e-12);
    CHECK(r.product_max_deviation <= 1e-12 * r.product_value);
    CHECK(r.g_value == doctest::Approx(1.0 / (c.q - 1)).epsilon(1e-14));
    CHECK(r.product_value == doctest::Approx(std::pow(c.q - 1, -c.q)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(recipe_check(std::numeric_limits<double>::infinity(), 2.0), UnsupportedError);
}
