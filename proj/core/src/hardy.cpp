#include <gnlab/hardy.hpp>

#include <gnlab/errors.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace gnlab {

namespace {

std::string fmt(double x) {
  if (x == 0.0) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

QuadResult add_results(const QuadResult& a, const QuadResult& b) {
  return {a.value + b.value, a.abs_error_estimate + b.abs_error_estimate,
          a.panels_used + b.panels_used, a.converged && b.converged};
}

// ∫_0^{t0} c t^k dt
QuadResult power_head(double c, double k, double t0) {
  if (!(k > -1.0)) return {kInfinity, 0.0, 0, false};
  return {c * std::pow(t0, k + 1.0) / (k + 1.0), 0.0, 0, true};
}

// ∫ g over (a, support_end) with the infinite part mapped by t = 1/τ.
QuadResult integrate_tail(const ScalarMap& g, double a, const HalfLineProfile& f,
                          const QuadOptions& opt) {
  std::vector<double> cuts{a};
  for (double b : f.breakpoints) {
    if (b > a && b < f.support_end) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  QuadResult total{0.0, 0.0, 0, true};
  if (std::isfinite(f.support_end)) {
    cuts.push_back(f.support_end);
    return integrate_1d(g, cuts, opt);
  }
  double split = std::max(cuts.back(), 1.0);
  if (split > a) {
    cuts.push_back(split);
    total = integrate_1d(g, cuts, opt);
  }
  const auto mapped = [&g](double tau) { return g(1.0 / tau) / (tau * tau); };
  return add_results(total, integrate_1d(mapped, 0.0, 1.0 / split, opt));
}

}  // namespace

double hardy_constant(double p, double alpha) {
  const double gap = std::abs(alpha - p + 1.0);
  if (gap == 0.0) throw HypothesisError("alpha != p - 1", "alpha = p - 1 = " + fmt(alpha));
  return std::pow(p / gap, p);
}

InequalityReport check_hardy(const HalfLineProfile& f, double p, double alpha,
                             const CheckOptions& opt) {
  InequalityReport r;
  r.theorem_id = TheoremId::hardy;
  r.p = p;
  r.n = 1;
  r.field = f.name;
  r.config_echo = {{"theorem", "hardy"}, {"p", p},          {"alpha", alpha},
                   {"profile", f.name},  {"rel_tol", opt.quad.rel_tol}};
  const auto require = [&r](const std::string& name, bool holds, const std::string& detail) {
    r.hypotheses.push_back({name, holds, detail});
    if (!holds) throw HypothesisError(name, detail);
  };
  require("p > 1", p > 1.0, "p = " + fmt(p));
  require("alpha != p - 1", alpha != p - 1.0, "alpha = " + fmt(alpha));
  r.constant = hardy_constant(p, alpha);

  if (alpha < p - 1.0) {
    double prev = kInfinity, last = 0.0;
    bool monotone = true;
    for (int k = 1; k <= 8; ++k) {
      last = std::abs(f.f(std::pow(10.0, -8.0 * k)));
      monotone = monotone && last <= prev;
      prev = last;
    }
    require("f(0+) = 0", monotone && last <= 1e-6, "|f(1e-64)| = " + fmt(last));
  } else if (std::isfinite(f.support_end)) {
    require("f(inf) = 0", true, "compact support up to t = " + fmt(f.support_end));
  } else {
    double prev = kInfinity, last = 0.0;
    bool monotone = true;
    for (int k = 1; k <= 8; ++k) {
      last = std::abs(f.f(std::pow(10.0, 8.0 * k)));
      monotone = monotone && last <= prev;
      prev = last;
    }
    require("f(inf) = 0", monotone && last <= 1e-6, "|f(1e64)| = " + fmt(last));
  }

  const ScalarMap lhs_g = [&](double t) { return std::pow(std::abs(f.f(t)), p) * std::pow(t, alpha - p); };
  const ScalarMap rhs_g = [&](double t) { return std::pow(std::abs(f.df(t)), p) * std::pow(t, alpha); };
  QuadResult lhs, rhs;
  if (f.head_beta) {
    const double beta = *f.head_beta;
    lhs = add_results(power_head(1.0, beta * p + alpha - p, f.head_end),
                      integrate_tail(lhs_g, f.head_end, f, opt.quad));
    rhs = add_results(power_head(std::pow(std::abs(beta), p), (beta - 1.0) * p + alpha, f.head_end),
                      integrate_tail(rhs_g, f.head_end, f, opt.quad));
  } else {
    lhs = integrate_tail(lhs_g, 0.0, f, opt.quad);
    rhs = integrate_tail(rhs_g, 0.0, f, opt.quad);
  }
  require("derivative integral finite", rhs.converged && std::isfinite(rhs.value),
          "int |f'|^p t^alpha = " + fmt(rhs.value));
  r.lhs = lhs;
  r.rhs_terms.push_back({"derivative", rhs, r.constant});
  finalize(r);
  return r;
}

HalfLineProfile cutoff_power(double beta, double t0, double t1) {
  if (!(beta > 0.0) || !(t1 > t0) || !(t0 > 0.0)) throw DomainError("cutoff_power parameters");
  HalfLineProfile f;
  f.name = "cutoff_power(beta=" + fmt(beta) + ";t0=" + fmt(t0) + ";t1=" + fmt(t1) + ")";
  const double w = t1 - t0;
  f.f = [=](double t) {
    if (t <= t0) return std::pow(t, beta);
    if (t >= t1) return 0.0;
    const double x = (t - t0) / w;
    return std::pow(t, beta) * (1.0 - 3.0 * x * x + 2.0 * x * x * x);
  };
  f.df = [=](double t) {
    if (t <= t0) return beta * std::pow(t, beta - 1.0);
    if (t >= t1) return 0.0;
    const double x = (t - t0) / w;
    const double chi = 1.0 - 3.0 * x * x + 2.0 * x * x * x;
    const double dchi = (-6.0 * x + 6.0 * x * x) / w;
    return beta * std::pow(t, beta - 1.0) * chi + std::pow(t, beta) * dchi;
  };
  f.breakpoints = {t0};
  f.support_end = t1;
  f.head_beta = beta;
  f.head_end = t0;
  return f;
}

HalfLineProfile power_with_decaying_tail(double beta, double gamma) {
  if (!(beta > 0.0) || !(gamma > 0.0)) throw DomainError("power_with_decaying_tail parameters");
  HalfLineProfile f;
  f.name = "power_tail(beta=" + fmt(beta) + ";gamma=" + fmt(gamma) + ")";
  const double c = beta + gamma;
  f.f = [=](double t) {
    if (t <= 1.0) return std::pow(t, beta);
    return std::pow(t, -gamma) * (1.0 + c * (1.0 - 1.0 / t));
  };
  f.df = [=](double t) {
    if (t <= 1.0) return beta * std::pow(t, beta - 1.0);
    return -gamma * std::pow(t, -gamma - 1.0) * (1.0 + c * (1.0 - 1.0 / t)) +
           std::pow(t, -gamma) * c / (t * t);
  };
  f.breakpoints = {1.0};
  f.head_beta = beta;
  f.head_end = 1.0;
  return f;
}

std::vector<SharpnessPoint> hardy_sharpness_probe(double p, double alpha,
                                                  const std::vector<double>& epsilons,
                                                  const CheckOptions& opt) {
  if (!(alpha < p - 1.0)) {
    throw HypothesisError("alpha < p - 1", "alpha = " + fmt(alpha) + ", p = " + fmt(p));
  }
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0) || (i > 0 && !(epsilons[i] < epsilons[i - 1]))) {
      throw DomainError("sharpness probe needs positive, strictly decreasing epsilons");
    }
  }
  const double beta0 = (p - 1.0 - alpha) / p;
  std::vector<SharpnessPoint> out;
  for (double eps : epsilons) {
    const InequalityReport rep = check_hardy(power_with_decaying_tail(beta0 + eps, eps), p, alpha, opt);
    const double rhs = rep.rhs_terms.front().value.value;
    out.push_back({eps, rep.lhs.value / (rep.constant * rhs), rep.lhs.value, rhs});
  }
  return out;
}

}  // namespace gnlab
