#include <gnlab/errors.hpp>
#include <gnlab/inequalities.hpp>

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace gnlab;
using test_support::free_field;
using test_support::rel_err;

namespace {

std::string violated(const std::function<void()>& f) {
  try {
    f();
  } catch (const HypothesisError& e) {
    return e.hypothesis();
  }
  return "";
}

}  // namespace

TEST_CASE("verdict rule") {
  CHECK(decide(1.0, 0.01, 2.0, 0.01, true) == Verdict::holds);
  CHECK(decide(2.0, 0.01, 1.0, 0.01, true) == Verdict::fails);
  CHECK(decide(2.0, 0.01, 1.0, 0.01, false) == Verdict::inconclusive);
  CHECK(decide(1.0, 0.1, 1.1, 0.1, true) == Verdict::inconclusive);
  CHECK(decide(1.0, 0.0, 1.0, 0.0, true) == Verdict::holds);
}

TEST_CASE("absorption root") {
  // I <= 1 + I^{1/2} gives I <= ((1+√5)/2)^2, below the cruder b² + 2a = 3
  const double root = absorption_root(1.0, 1.0);
  CHECK(root == doctest::Approx(std::pow((1 + std::sqrt(5.0)) / 2, 2)).epsilon(1e-14));
  CHECK(root <= 3.0);
  CHECK(absorption_root(2.0, 0.0) == doctest::Approx(2.0));
}

TEST_CASE("theorem names") {
  for (auto id : {TheoremId::classical_gn, TheoremId::main2, TheoremId::goal3, TheoremId::goal4,
                  TheoremId::goal5, TheoremId::goal6, TheoremId::hardy, TheoremId::counterexample}) {
    CHECK(theorem_from_string(to_string(id)) == id);
  }
  CHECK_THROWS_AS(theorem_from_string("goal7"), DomainError);
}

TEST_CASE("main2") {
  const auto r = check_main2(profiles::paraboloid(2), WeightSpec::constant(), 2.0);
  CHECK(r.verdict == Verdict::holds);
  CHECK(r.constant == doctest::Approx(2.0));
  // lhs = 2π, rhs = C(2,2) ∫ 2√2 (1-s²) = 2 · √2 π
  CHECK(rel_err(r.lhs.value, 2 * std::numbers::pi) <= 1e-10);
  CHECK(r.ratio == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
  CHECK(r.all_hypotheses_hold());

  const auto r5 = check_main2(profiles::cosine_bump(5, 0.5), WeightSpec::power_law(1.0, -0.2, 1.0), 4.0);
  CHECK(r5.constant == doctest::Approx(25.0));
  CHECK(r5.verdict == Verdict::holds);

  // outward flux: C > 0 makes H_C(0) < 0
  CHECK(violated([] { check_main2(profiles::paraboloid(2), WeightSpec::constant(1.0, 0.5), 2.0); }) ==
        "boundary flux <= 0");
  CHECK(violated([] { check_main2(profiles::paraboloid(2), WeightSpec::constant(), 1.5); }) == "p >= 2");
  CHECK(violated([] { check_main2(profiles::paraboloid(2), WeightSpec::power_law(1.0, 0.0, 0.5), 2.0); }) ==
        "0 < u < B");
}

TEST_CASE("goal3") {
  const auto eq = check_goal3(profiles::paraboloid(2), WeightSpec::constant(), 2.0);
  CHECK(rel_err(eq.lhs.value, 2 * std::numbers::pi) <= 1e-8);
  CHECK(rel_err(eq.rhs_compared, 2 * std::numbers::pi) <= 1e-8);
  CHECK(eq.ratio == doctest::Approx(1.0).epsilon(1e-6));
  // exact equality cannot be separated by error intervals
  CHECK(eq.verdict == Verdict::inconclusive);

  CHECK(check_goal3(profiles::paraboloid(2), WeightSpec::constant(), 4.0).verdict == Verdict::holds);
  CHECK(check_goal3(profiles::paraboloid_power(3, 2.0), WeightSpec::power_law(0.5), 2.0).verdict ==
        Verdict::holds);
  // p = 2 equality also for other sign-definite Dirichlet fields
  for (const auto& u : {profiles::cosine_bump(3), profiles::paraboloid(5, 0.4)}) {
    CHECK(check_goal3(u, WeightSpec::constant(), 2.0).ratio == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("goal4") {
  const auto a = check_goal4(profiles::paraboloid(3), WeightSpec::constant(), 3.0);
  CHECK(a.verdict == Verdict::holds);
  CHECK(a.rhs_terms.size() == 2);
  CHECK(a.rhs_terms[0].multiplier == doctest::Approx(4.0));        // 2(p-1)
  CHECK(a.rhs_terms[1].multiplier == doctest::Approx(4.0));        // ((p-2)(n-1))²

  // p >= n with u(0) > 0 makes the finiteness integral diverge at the center
  const auto b = check_goal4(profiles::paraboloid(2), WeightSpec::power_law(1.0), 2.5);
  CHECK(b.verdict == Verdict::holds);
  CHECK(std::isinf(b.rhs_compared));

  const auto b5 = check_goal4(profiles::paraboloid(5), WeightSpec::power_law(1.0), 2.5);
  CHECK(b5.verdict == Verdict::holds);
  CHECK(std::isfinite(b5.rhs_compared));
  bool finiteness = false;
  for (const auto& h : b5.hypotheses) finiteness = finiteness || (h.name == "hardy integral finite" && h.holds);
  CHECK(finiteness);

  // p >= n: |u|^p/|x|^p is not integrable at the center; with h bounded the
  // hardy term on the right is infinite as well
  const auto t = check_goal4(profiles::paraboloid(2), WeightSpec::constant(), 3.0);
  CHECK(t.verdict == Verdict::holds);
  CHECK(std::isinf(t.rhs_compared));
  CHECK(t.ratio == 0.0);
  CHECK(violated([] { check_goal4(profiles::paraboloid(2), WeightSpec::power_law(-0.5), 3.0); }) ==
        "hardy integral finite or h bounded");
  CHECK(violated([] { check_goal4(profiles::paraboloid(3), WeightSpec::constant(), 2.0); }) == "p > 2");
  CHECK(violated([] { check_goal4(profiles::harmonic_annulus(3, 10.0), WeightSpec::constant(), 3.0); }) ==
        "ball domain");
}

TEST_CASE("goal5") {
  const auto ok = build_ledger(WeightSpec::power_law_scaled(2.0), 2.1, 6);
  const auto r = check_goal5(profiles::paraboloid(6, 0.5), ok, WeightSpec::power_law_scaled(2.0));
  CHECK(r.verdict == Verdict::holds);
  CHECK(r.constant == doctest::Approx(*ok.a_goal5));

  const auto bad = build_ledger(WeightSpec::power_law_scaled(2.0), 3.0, 6);
  CHECK(violated([&] { check_goal5(profiles::paraboloid(6, 0.5), bad, WeightSpec::power_law_scaled(2.0)); }) ==
        "D < 1");

  // near p = 2, D -> 0 and A approaches (2(p-1))^{p/2}
  const auto close = build_ledger(WeightSpec::constant(), 2.05, 6);
  CHECK(*close.d_goal5 == doctest::Approx(0.05 * 5 * 2.05 / 3.95).epsilon(1e-10));
  CHECK(rel_err(*close.a_goal5, std::pow(2 * 1.05, 2.05 / 2)) <= 0.05);
  CHECK(check_goal5(profiles::paraboloid(6), close, WeightSpec::constant()).verdict == Verdict::holds);

  // C > 0 breaks H_C(0) >= 0
  const auto neg = build_ledger(WeightSpec::constant(1.0, 0.1), 2.5, 6);
  CHECK(violated([&] { check_goal5(profiles::paraboloid(6), neg, WeightSpec::constant(1.0, 0.1)); }) ==
        "H_C(0) >= 0");
}

TEST_CASE("goal6") {
  const auto h = WeightSpec::shifted_power(-2.0, -1.0);
  const GControl g = constant_control(1.0);
  const auto l = build_ledger(h, 4.0, 2, 1.0, &g);
  const auto r = check_goal6(profiles::paraboloid(2, 0.5), l, h);
  CHECK(r.verdict == Verdict::holds);
  CHECK(r.constant == doctest::Approx(3.0));

  // inflated D̃ pushes κ over 1
  const auto w = WeightSpec::power_law(1.0, 0.0, 1.0);
  const GControl gn = natural_control(w, 3.0);
  const auto big = build_ledger(w, 3.0, 3, 100.0, &gn);
  CHECK(*big.kappa >= 1.0);
  CHECK(violated([&] { check_goal6(profiles::paraboloid(3, 0.5), big, w); }) == "kappa < 1");

  const auto none = build_ledger(w, 3.0, 3, std::nullopt, &gn);
  CHECK(violated([&] { check_goal6(profiles::paraboloid(3, 0.5), none, w); }) == "dtilde supplied");
  const auto nocontrol = build_ledger(w, 3.0, 3, 1.0);
  CHECK(violated([&] { check_goal6(profiles::paraboloid(3, 0.5), nocontrol, w); }) == "control function supplied");

  bool heuristic_note = false;
  for (const auto& n : r.notes) heuristic_note = heuristic_note || n.find("heuristic") != std::string::npos;
  CHECK(heuristic_note);
}

TEST_CASE("classical GN ratio") {
  const auto r = check_classical_gn(profiles::paraboloid(2), 2.0, 2.0, 2.0);
  CHECK(std::isfinite(r.ratio));
  CHECK(r.ratio > 0.0);
  CHECK(r.verdict == Verdict::holds);
  CHECK(std::isnan(r.constant));
  CHECK_THROWS_AS(check_classical_gn(profiles::paraboloid(2), 3.0, 2.0, 2.0), ExponentError);
}

TEST_CASE("counterexample") {
  const auto r = run_counterexample(3, 10.0, 3.0);
  CHECK(r.verdict == Verdict::fails);
  CHECK(r.rhs_compared == 0.0);
  CHECK(rel_err(r.lhs.value, 4 * std::numbers::pi / 3 * (1 - 1e-3)) <= 1e-6);

  double prev = 0.0;
  for (double R : {2.0, 5.0, 10.0, 50.0, 200.0}) {
    const auto x = run_counterexample(3, R, 3.0);
    CHECK(x.lhs.value > prev);
    CHECK(x.lhs.value < 4 * std::numbers::pi / 3);
    prev = x.lhs.value;
  }
  for (int n : {2, 4}) {
    const auto x = run_counterexample(n, 10.0, 2.5);
    CHECK(x.verdict == Verdict::fails);
    CHECK(x.lhs.value > 0.0);
  }
}

TEST_CASE("dtilde estimate") {
  CHECK(estimate_dtilde(2.0, {profiles::paraboloid(2)}).lower_bound == doctest::Approx(0.5).epsilon(1e-10));
  const auto e5 = estimate_dtilde(2.0, {profiles::paraboloid(5)});
  CHECK(e5.lower_bound == doctest::Approx(0.8).epsilon(1e-10));
  CHECK(e5.suggested == doctest::Approx(1.2).epsilon(1e-10));

  // bump plus a paraboloid, Dirichlet on the unit ball
  const auto mixed = RadialField(Profile([](const Jet2& s) { return cos(0.5 * std::numbers::pi * s) + 1.0 - s * s; }),
                                 3, 0.0, 1.0, kInfinity, "mixed");
  const auto m = estimate_dtilde(2.5, {mixed});
  CHECK(std::isfinite(m.lower_bound));
  CHECK(m.lower_bound > 0.0);

  FieldOptions zero_opt;
  zero_opt.check_range = false;
  const RadialField flat(Profile([](const Jet2& s) { return 0.0 * s; }), 2, 0.0, 1.0, kInfinity, "zero", zero_opt);
  CHECK_THROWS_AS(estimate_dtilde(2.0, {flat}), DegenerateError);
}

TEST_CASE("scale invariance of ratios") {
  const auto h = WeightSpec::constant();
  for (const auto& u : {profiles::paraboloid(3, 0.5), profiles::cosine_bump(4), profiles::paraboloid_power(3, 2.0)}) {
    for (double c : {2.0, 0.25}) {
      const auto v = u.scaled(c);
      CHECK(std::fabs(check_main2(u, h, 3.0).ratio - check_main2(v, h, 3.0).ratio) <= 1e-9);
      CHECK(std::fabs(check_goal3(u, h, 2.5).ratio - check_goal3(v, h, 2.5).ratio) <= 1e-9);
      CHECK(std::fabs(check_goal4(u, h, 2.5).ratio - check_goal4(v, h, 2.5).ratio) <= 1e-9);
    }
  }
}

TEST_CASE("laplacian term is dominated by the hessian term") {
  const auto h = WeightSpec::power_law(1.0, -0.5);
  for (const auto& u : {profiles::paraboloid(3, 0.5), profiles::cosine_bump(5), profiles::paraboloid_power(2, 2.0)}) {
    for (double p : {2.0, 3.0}) {
      const double lap = weighted_seminorm(u, Integrand::lap_T_h, p, h).value;
      const double hess = weighted_seminorm(u, Integrand::hess_T_h, p, h).value;
      CHECK(lap <= std::pow(u.n(), p / 4) * hess * (1 + 1e-9));
    }
  }
}
