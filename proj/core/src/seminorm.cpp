#include <gnlab/seminorm.hpp>

#include <gnlab/errors.hpp>

#include <cmath>
#include <cstdio>

namespace gnlab {

std::string to_string(Integrand integrand) {
  switch (integrand) {
    case Integrand::grad_p_h: return "grad_p_h";
    case Integrand::hess_T_h: return "hess_T_h";
    case Integrand::lap_T_h: return "lap_T_h";
    case Integrand::inf_T_h: return "inf_T_h";
    case Integrand::spade_T_h: return "spade_T_h";
    case Integrand::hardy_T_h: return "hardy_T_h";
    case Integrand::hardy_T_h2: return "hardy_T_h2";
  }
  return "unknown";
}

Integrand integrand_from_string(const std::string& name) {
  for (Integrand i : {Integrand::grad_p_h, Integrand::hess_T_h, Integrand::lap_T_h,
                      Integrand::inf_T_h, Integrand::spade_T_h, Integrand::hardy_T_h,
                      Integrand::hardy_T_h2}) {
    if (to_string(i) == name) return i;
  }
  throw DomainError("unknown integrand '" + name + "'");
}

double integrand_value(const RadialField& field, Integrand integrand, double p,
                       const WeightSpec& h_spec, double s) {
  const RadialOps o = radial_ops(field, s);
  const double h = eval_h(h_spec, o.w);
  if (integrand == Integrand::grad_p_h) return std::pow(o.grad, p) * h;
  const double T = std::abs(eval_H(h_spec, o.w) / h);
  const auto half = [&](double op) { return std::pow(std::abs(op) * T, 0.5 * p) * h; };
  switch (integrand) {
    case Integrand::hess_T_h: return half(o.hessian);
    case Integrand::lap_T_h: return half(o.laplacian);
    case Integrand::inf_T_h: return half(o.infinity_laplacian);
    case Integrand::spade_T_h: return half(o.spade);
    case Integrand::hardy_T_h: return std::pow(T / s, p) * h;
    case Integrand::hardy_T_h2: return std::pow(T / s, p) * h * h;
    default: break;
  }
  throw DomainError("unhandled integrand");
}

QuadResult weighted_seminorm(const RadialField& field, Integrand integrand, double p,
                             const WeightSpec& h_spec, const QuadOptions& opt) {
  if (!(p > 0.0)) throw DomainError("seminorm exponent must be positive");
  return integrate_radial(
      [&](double s) { return integrand_value(field, integrand, p, h_spec, s); }, field.measure(),
      opt, field.breakpoints());
}

QuadResult operator_power_integral(const RadialField& field, Operator op, double q,
                                   const QuadOptions& opt) {
  if (!(q > 0.0)) throw DomainError("norm exponent must be positive");
  const auto pick = [op](const RadialOps& o) {
    switch (op) {
      case Operator::value: return o.w;
      case Operator::grad: return o.grad;
      case Operator::laplacian: return o.laplacian;
      case Operator::infinity_laplacian: return o.infinity_laplacian;
      case Operator::spade: return o.spade;
      case Operator::hessian: return o.hessian;
    }
    return 0.0;
  };
  return integrate_radial([&](double s) { return std::pow(std::abs(pick(radial_ops(field, s))), q); },
                          field.measure(), opt, field.breakpoints());
}

}  // namespace gnlab
