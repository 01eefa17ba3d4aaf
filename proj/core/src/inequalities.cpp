#include <gnlab/inequalities.hpp>

#include <gnlab/errors.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace gnlab {

namespace {

std::string fmt(double x) {
  if (x == 0.0) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Error bar of x^k given the error bar σ of x; σ never drops below the
// rounding level of the summed quadrature.
double power_sigma(double x, double sigma, double k) {
  if (!std::isfinite(x)) return kInfinity;
  sigma = std::max(sigma, 64.0 * std::numeric_limits<double>::epsilon() * std::abs(x));
  if (k == 1.0) return sigma;
  const double up = std::pow(x + sigma, k) - std::pow(x, k);
  const double down = std::pow(x, k) - std::pow(std::max(x - sigma, 0.0), k);
  return std::max(up, down);
}

void add(InequalityReport& r, std::string name, bool holds, std::string detail) {
  r.hypotheses.push_back({std::move(name), holds, std::move(detail)});
}

void require(InequalityReport& r, const std::string& name, bool holds, const std::string& detail) {
  add(r, name, holds, detail);
  if (!holds) throw HypothesisError(name, detail);
}

QuadOptions finiteness_options(const QuadOptions& base) {
  QuadOptions q = base;
  q.max_panels = std::min<std::size_t>(q.max_panels, 4000);
  return q;
}

bool finite_integral(const QuadResult& q) { return q.converged && std::isfinite(q.value); }

InequalityReport start(TheoremId id, const RadialField& field, const WeightSpec* h_spec, double p,
                       const CheckOptions& opt) {
  InequalityReport r;
  r.theorem_id = id;
  r.n = field.n();
  r.p = p;
  r.field = field.descriptor();
  if (h_spec) r.weight = h_spec->descriptor();
  r.config_echo = {{"theorem", to_string(id)},
                   {"p", p},
                   {"n", field.n()},
                   {"field", field.descriptor()},
                   {"r_in", field.r_in()},
                   {"r_out", field.r_out()},
                   {"rel_tol", opt.quad.rel_tol},
                   {"abs_tol", opt.quad.abs_tol},
                   {"max_panels", opt.quad.max_panels}};
  if (h_spec) r.config_echo["weight"] = h_spec->descriptor();
  return r;
}

void require_range(InequalityReport& r, const RadialField& field, const WeightSpec& h_spec) {
  const auto [lo, hi] = field.range();
  require(r, "0 < u < B", lo > 0.0 && hi < h_spec.B(),
          "range [" + fmt(lo) + ", " + fmt(hi) + "] against B = " + fmt(h_spec.B()));
}

void require_flux(InequalityReport& r, const RadialField& field, const WeightSpec& h_spec,
                  double p) {
  const double flux = boundary_flux(field, p, h_spec);
  require(r, "boundary flux <= 0", flux <= 0.0, "flux = " + fmt(flux));
}

void require_dirichlet_ball(InequalityReport& r, const RadialField& field) {
  require(r, "ball domain", field.is_ball(), "r_in = " + fmt(field.r_in()));
  require(r, "u = 0 on the boundary", field.dirichlet(),
          "w(r_out) = " + fmt(field.value(field.r_out())));
}

QuadResult hardy_finiteness(const RadialField& field, const WeightSpec& h_spec, double p,
                            const CheckOptions& opt) {
  return weighted_seminorm(field, Integrand::hardy_T_h2, p, h_spec, finiteness_options(opt.quad));
}

std::string hardy_detail(const QuadResult& q) {
  return "int |T(u)|^p h(u)^2 |x|^-p = " + fmt(q.value) +
         (q.converged ? "" : " (quadrature did not converge)");
}

void require_hardy_finite(InequalityReport& r, const RadialField& field, const WeightSpec& h_spec,
                          double p, const CheckOptions& opt) {
  const QuadResult q = hardy_finiteness(field, h_spec, p, opt);
  require(r, "hardy integral finite", finite_integral(q), hardy_detail(q));
}

// sup of h over (0, hi], probing geometrically towards 0
double sup_h_below(const WeightSpec& h_spec, double hi) {
  double sup = 0.0;
  for (double lam = hi; lam > 0.0; lam *= 0.5) sup = std::max(sup, eval_h(h_spec, lam));
  for (int i = 1; i <= 256; ++i) sup = std::max(sup, eval_h(h_spec, hi * i / 256.0));
  return sup;
}

void note_critical_points(InequalityReport& r, const RadialField& field) {
  const auto crit = field.interior_critical_points();
  if (!crit.empty()) {
    r.notes.push_back("profile has " + std::to_string(crit.size()) +
                      " interior critical point(s); infinity Laplacian set to 0 there, first at s = " +
                      fmt(crit.front()));
  }
}

}  // namespace

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::classical_gn: return "classical_gn";
    case TheoremId::main2: return "main2";
    case TheoremId::goal3: return "goal3";
    case TheoremId::goal4: return "goal4";
    case TheoremId::goal5: return "goal5";
    case TheoremId::goal6: return "goal6";
    case TheoremId::hardy: return "hardy";
    case TheoremId::counterexample: return "counterexample";
  }
  return "unknown";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

TheoremId theorem_from_string(const std::string& name) {
  for (TheoremId id : {TheoremId::classical_gn, TheoremId::main2, TheoremId::goal3,
                       TheoremId::goal4, TheoremId::goal5, TheoremId::goal6, TheoremId::hardy,
                       TheoremId::counterexample}) {
    if (to_string(id) == name) return id;
  }
  throw DomainError("unknown theorem '" + name + "'");
}

bool InequalityReport::all_hypotheses_hold() const {
  return std::all_of(hypotheses.begin(), hypotheses.end(),
                     [](const HypothesisCheck& h) { return h.holds; });
}

Verdict decide(double L, double sigma_L, double R, double sigma_R, bool hypotheses_hold) {
  if (L + 3.0 * sigma_L <= R - 3.0 * sigma_R) return Verdict::holds;
  if (hypotheses_hold && L - 3.0 * sigma_L > R + 3.0 * sigma_R) return Verdict::fails;
  return Verdict::inconclusive;
}

void finalize(InequalityReport& r) {
  const double k = r.exponent;
  r.lhs_compared = std::pow(r.lhs.value, k);
  r.lhs_sigma = power_sigma(r.lhs.value, r.lhs.abs_error_estimate, k);
  r.rhs_compared = 0.0;
  r.rhs_sigma = 0.0;
  for (const auto& t : r.rhs_terms) {
    if (t.multiplier == 0.0) continue;
    r.rhs_compared += t.multiplier * std::pow(t.value.value, k);
    r.rhs_sigma += t.multiplier * power_sigma(t.value.value, t.value.abs_error_estimate, k);
  }
  if (r.rhs_compared > 0.0) {
    r.ratio = r.lhs_compared / r.rhs_compared;
  } else {
    r.ratio = r.lhs_compared > 0.0 ? kInfinity : 0.0;
  }
  r.verdict = decide(r.lhs_compared, r.lhs_sigma, r.rhs_compared, r.rhs_sigma,
                     r.all_hypotheses_hold());
}

double absorption_root(double a, double b) {
  if (!(a >= 0.0) || !(b >= 0.0)) throw DomainError("absorption bound needs a, b >= 0");
  const double t = 0.5 * (b + std::sqrt(b * b + 4.0 * a));
  return t * t;
}

InequalityReport check_main2(const RadialField& field, const WeightSpec& h_spec, double p,
                             const CheckOptions& opt) {
  InequalityReport r = start(TheoremId::main2, field, &h_spec, p, opt);
  require(r, "p >= 2", p >= 2.0, "p = " + fmt(p));
  require_range(r, field, h_spec);
  require_flux(r, field, h_spec, p);
  r.constant = c_np(field.n(), p);
  r.lhs = weighted_seminorm(field, Integrand::grad_p_h, p, h_spec, opt.quad);
  r.rhs_terms.push_back(
      {"hess_T_h", weighted_seminorm(field, Integrand::hess_T_h, p, h_spec, opt.quad), r.constant});
  finalize(r);
  return r;
}

InequalityReport check_goal3(const RadialField& field, const WeightSpec& h_spec, double p,
                             const CheckOptions& opt) {
  InequalityReport r = start(TheoremId::goal3, field, &h_spec, p, opt);
  require(r, "p >= 2", p >= 2.0, "p = " + fmt(p));
  require_range(r, field, h_spec);
  require_flux(r, field, h_spec, p);
  r.constant = 1.0;
  r.exponent = 2.0 / p;
  r.lhs = weighted_seminorm(field, Integrand::grad_p_h, p, h_spec, opt.quad);
  if (p > 2.0) {
    r.rhs_terms.push_back(
        {"inf_T_h", weighted_seminorm(field, Integrand::inf_T_h, p, h_spec, opt.quad), p - 2.0});
  }
  r.rhs_terms.push_back(
      {"lap_T_h", weighted_seminorm(field, Integrand::lap_T_h, p, h_spec, opt.quad), 1.0});
  note_critical_points(r, field);
  finalize(r);
  return r;
}

InequalityReport check_goal4(const RadialField& field, const WeightSpec& h_spec, double p,
                             const CheckOptions& opt) {
  InequalityReport r = start(TheoremId::goal4, field, &h_spec, p, opt);
  require(r, "p > 2", p > 2.0, "p = " + fmt(p));
  require_dirichlet_ball(r, field);
  require(r, "H_C(0) >= 0", h_spec.hc0_nonneg(), "H_C(0) = " + fmt(-h_spec.C()));
  require_range(r, field, h_spec);
  const double a = 2.0 * (p - 1.0);
  const double b = (p - 2.0) * (field.n() - 1.0);
  r.constant = a;
  r.exponent = 2.0 / p;
  const QuadResult finiteness = hardy_finiteness(field, h_spec, p, opt);
  if (finite_integral(finiteness)) {
    add(r, "hardy integral finite", true, hardy_detail(finiteness));
  } else {
    // With h bounded the finiteness integral is at most sup h times the
    // hardy term, so the hardy term diverges too and the right side is +inf.
    const double h_sup = sup_h_below(h_spec, field.range().second);
    const QuadResult hardy = weighted_seminorm(field, Integrand::hardy_T_h, p, h_spec,
                                               finiteness_options(opt.quad));
    const bool trivial = std::isfinite(h_sup) && h_sup <= 1e8 && !finite_integral(hardy) && b > 0.0;
    require(r, "hardy integral finite or h bounded", trivial,
            hardy_detail(finiteness) + ", sup h = " + fmt(h_sup));
    r.lhs = weighted_seminorm(field, Integrand::grad_p_h, p, h_spec, opt.quad);
    r.rhs_terms.push_back(
        {"lap_T_h", weighted_seminorm(field, Integrand::lap_T_h, p, h_spec, opt.quad), a});
    r.rhs_terms.push_back({"hardy_T_h", {kInfinity, kInfinity, hardy.panels_used, false}, b * b});
    r.lhs_compared = std::pow(r.lhs.value, r.exponent);
    r.lhs_sigma = power_sigma(r.lhs.value, r.lhs.abs_error_estimate, r.exponent);
    r.rhs_compared = kInfinity;
    r.rhs_sigma = 0.0;
    r.ratio = 0.0;
    r.verdict = finite_integral(r.lhs) ? Verdict::holds : Verdict::inconclusive;
    r.notes.push_back("hardy term infinite with h bounded: the inequality holds trivially");
    return r;
  }
  r.lhs = weighted_seminorm(field, Integrand::grad_p_h, p, h_spec, opt.quad);
  r.rhs_terms.push_back(
      {"lap_T_h", weighted_seminorm(field, Integrand::lap_T_h, p, h_spec, opt.quad), a});
  r.rhs_terms.push_back(
      {"hardy_T_h", weighted_seminorm(field, Integrand::hardy_T_h, p, h_spec, opt.quad), b * b});
  finalize(r);
  return r;
}

InequalityReport check_goal5(const RadialField& field, const ConstantsLedger& ledger,
                             const WeightSpec& h_spec, const CheckOptions& opt) {
  const double p = ledger.p;
  InequalityReport r = start(TheoremId::goal5, field, &h_spec, p, opt);
  if (ledger.n != field.n()) {
    throw DomainError("ledger dimension " + std::to_string(ledger.n) +
                      " differs from field dimension " + std::to_string(field.n()));
  }
  for (const auto& h : ledger.hypotheses) {
    if (h.theorem != "goal5") continue;
    require(r, h.name, h.holds, h.detail);
  }
  require_dirichlet_ball(r, field);
  require_range(r, field, h_spec);
  require_hardy_finite(r, field, h_spec, p, opt);
  r.constant = *ledger.a_goal5;
  r.config_echo["D"] = *ledger.d_goal5;
  r.config_echo["C_hcp"] = ledger.c_hcp;
  r.lhs = weighted_seminorm(field, Integrand::grad_p_h, p, h_spec, opt.quad);
  r.rhs_terms.push_back(
      {"lap_T_h", weighted_seminorm(field, Integrand::lap_T_h, p, h_spec, opt.quad), r.constant});
  finalize(r);
  return r;
}

InequalityReport check_goal6(const RadialField& field, const ConstantsLedger& ledger,
                             const WeightSpec& h_spec, bool dtilde_heuristic,
                             const CheckOptions& opt) {
  const double p = ledger.p;
  InequalityReport r = start(TheoremId::goal6, field, &h_spec, p, opt);
  require(r, "control function supplied", !ledger.g_control.empty(), "no control function G");
  for (const auto& h : ledger.hypotheses) {
    if (h.theorem != "goal6") continue;
    require(r, h.name, h.holds, h.detail);
  }
  const bool zero_inner = field.is_ball() || std::abs(field.value(field.r_in())) <= 1e-12;
  require(r, "u = 0 on the boundary", field.dirichlet() && zero_inner,
          "w(r_out) = " + fmt(field.value(field.r_out())));
  require_range(r, field, h_spec);
  r.constant = *ledger.a_omega;
  r.config_echo["E"] = *ledger.e_goal6;
  r.config_echo["c1"] = *ledger.c1;
  r.config_echo["c2"] = *ledger.c2;
  r.config_echo["dtilde"] = *ledger.dtilde;
  r.config_echo["kappa"] = *ledger.kappa;
  r.config_echo["control"] = ledger.g_control;
  r.lhs = weighted_seminorm(field, Integrand::grad_p_h, p, h_spec, opt.quad);
  const bool finiteness_needed = !(ledger.g_constant || *ledger.e_goal6 == 0.0);
  if (finiteness_needed) {
    require(r, "I(u) finite", finite_integral(r.lhs), "I(u) = " + fmt(r.lhs.value));
    r.notes.push_back("finiteness of I(u) was required and verified");
  } else {
    r.notes.push_back("finiteness of I(u) not required: G is constant");
  }
  r.notes.push_back(std::string("dtilde = ") + fmt(*ledger.dtilde) +
                    (dtilde_heuristic ? " (heuristic: empirical lower bound times safety factor)"
                                      : " (supplied)"));
  r.rhs_terms.push_back(
      {"lap_T_h", weighted_seminorm(field, Integrand::lap_T_h, p, h_spec, opt.quad), r.constant});
  finalize(r);
  return r;
}

InequalityReport check_classical_gn(const RadialField& field, double p, double q, double r_exp,
                                    const CheckOptions& opt) {
  if (!(p > 0.0 && q > 0.0 && r_exp > 0.0)) throw ExponentError("exponents must be positive");
  const double gap = 2.0 / q - (1.0 / r_exp + 1.0 / p);
  if (std::abs(gap) > 1e-12) {
    throw ExponentError("2/q = 1/r + 1/p violated: 2/q - 1/r - 1/p = " + fmt(gap));
  }
  InequalityReport r = start(TheoremId::classical_gn, field, nullptr, p, opt);
  r.config_echo["q"] = q;
  r.config_echo["r"] = r_exp;
  r.constant = std::numeric_limits<double>::quiet_NaN();
  r.lhs = operator_power_integral(field, Operator::grad, q, opt.quad);
  const QuadResult u_r = operator_power_integral(field, Operator::value, r_exp, opt.quad);
  const QuadResult hess = operator_power_integral(field, Operator::hessian, p, opt.quad);
  r.rhs_terms.push_back({"u_r", u_r, 1.0});
  r.rhs_terms.push_back({"hess_p", hess, 1.0});
  const double grad_norm_q = std::pow(r.lhs.value, 1.0 / q);
  const double u_norm = std::pow(u_r.value, 1.0 / r_exp);
  const double hess_norm = std::pow(hess.value, 1.0 / p);
  r.lhs_compared = grad_norm_q;
  r.rhs_compared = std::sqrt(u_norm * hess_norm) + u_norm;
  r.ratio = r.lhs_compared / r.rhs_compared;
  r.verdict = Verdict::holds;
  r.notes.push_back("no explicit constant is known; ratio recorded for regression tracking");
  return r;
}

InequalityReport run_counterexample(int n, double R, double p, double alpha_tilde,
                                    const CheckOptions& opt) {
  if (!(p > 2.0)) throw DomainError("counterexample needs p > 2");
  if (!(alpha_tilde < 1.0)) throw DomainError("counterexample weight needs alpha < 1");
  const RadialField field = profiles::harmonic_annulus(n, R);
  const WeightSpec h = WeightSpec::power_law(-alpha_tilde);
  InequalityReport r = start(TheoremId::counterexample, field, &h, p, opt);
  r.config_echo["R"] = R;
  r.config_echo["alpha_tilde"] = alpha_tilde;
  r.constant = 1.0;

  double max_lap = 0.0;
  for (double s : field.probe_radii(1000)) max_lap = std::max(max_lap, std::abs(laplacian(field, s)));
  const auto [lo, hi] = field.range();
  add(r, "u > 0 in the domain", lo > 0.0, "min u = " + fmt(lo) + ", max u = " + fmt(hi));
  add(r, "Laplacian vanishes", max_lap <= 1e-10, "max |Laplacian| = " + fmt(max_lap));
  const double inner = unit_sphere_measure(n) * phi_p(field.jet(1.0).d1, p) *
                       eval_H(h, std::max(field.value(1.0), 0.0));
  add(r, "boundary flux <= 0", inner <= 0.0, "flux through |x| = 1 is " + fmt(inner));

  r.lhs = weighted_seminorm(field, Integrand::grad_p_h, p, h, opt.quad);
  const QuadResult raw = weighted_seminorm(field, Integrand::lap_T_h, p, h, opt.quad);
  QuadResult rhs = raw;
  if (max_lap <= 1e-10) {
    rhs = QuadResult{0.0, 0.0, raw.panels_used, true};
  }
  r.rhs_terms.push_back({"lap_T_h", rhs, r.constant});
  r.notes.push_back("quadrature of the right side before exact zeroing: " + fmt(raw.value));
  r.notes.push_back(
      "the domain is the exterior of the unit ball (unbounded); integrals are truncated at R = " +
      fmt(R));
  finalize(r);
  return r;
}

DtildeEstimate estimate_dtilde(double q, const std::vector<RadialField>& family,
                               const CheckOptions& opt, double safety_factor) {
  if (!(q > 1.0)) throw DomainError("estimate_dtilde needs q > 1");
  if (family.empty()) throw DomainError("estimate_dtilde needs at least one field");
  DtildeEstimate est;
  est.safety_factor = safety_factor;
  const double R = family.front().r_out();
  for (const auto& f : family) {
    if (!f.is_ball() || f.r_out() != R || !f.dirichlet()) {
      throw DomainError("estimate_dtilde needs Dirichlet fields on one common ball");
    }
    const double num = std::pow(operator_power_integral(f, Operator::spade, q, opt.quad).value, 1.0 / q);
    const double den =
        std::pow(operator_power_integral(f, Operator::laplacian, q, opt.quad).value, 1.0 / q);
    if (!(den > opt.quad.abs_tol)) {
      throw DegenerateError("Laplacian norm of " + f.descriptor() + " vanishes");
    }
    est.ratios.push_back(num / den);
    est.lower_bound = std::max(est.lower_bound, num / den);
  }
  est.suggested = est.lower_bound * safety_factor;
  return est;
}

}  // namespace gnlab
