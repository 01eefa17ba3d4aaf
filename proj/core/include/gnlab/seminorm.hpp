#pragma once

#include <gnlab/calculus.hpp>
#include <gnlab/quadrature.hpp>
#include <gnlab/weights.hpp>

#include <string>

namespace gnlab {

/// Radial integrands of the weighted seminorms.
enum class Integrand {
  grad_p_h,   // |∇u|^p h(u)
  hess_T_h,   // (|∇²u| |T(u)|)^{p/2} h(u)
  lap_T_h,    // (|Δu| |T(u)|)^{p/2} h(u)
  inf_T_h,    // (|Δ_∞u| |T(u)|)^{p/2} h(u)
  spade_T_h,  // (|Δ♠u| |T(u)|)^{p/2} h(u)
  hardy_T_h,  // (|T(u)|/|x|)^p h(u)
  hardy_T_h2  // |T(u)|^p h(u)^2 / |x|^p, the finiteness condition of the radial theorems
};

std::string to_string(Integrand integrand);
Integrand integrand_from_string(const std::string& name);

/// Pointwise value of the integrand at radius s (without the s^{n-1} factor).
double integrand_value(const RadialField& field, Integrand integrand, double p,
                       const WeightSpec& h_spec, double s);

/// θ_n ∫ integrand(s) s^{n-1} ds over the field's radial interval.
/// Throws DomainError if u leaves (0,B) of the weight.
QuadResult weighted_seminorm(const RadialField& field, Integrand integrand, double p,
                             const WeightSpec& h_spec, const QuadOptions& opt = {});

/// ∫_Ω |g(u and derivatives)|^q dx for an operator picked from RadialOps.
enum class Operator { value, grad, laplacian, infinity_laplacian, spade, hessian };
QuadResult operator_power_integral(const RadialField& field, Operator op, double q,
                                   const QuadOptions& opt = {});

}  // namespace gnlab
