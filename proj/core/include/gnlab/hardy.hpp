#pragma once

#include <gnlab/inequalities.hpp>

#include <optional>
#include <string>
#include <vector>

namespace gnlab {

/// A function on (0, ∞) for the one-dimensional Hardy inequality.
/// Optionally f(t) = t^beta exactly on (0, head_end], so the head integrals
/// are taken in closed form. Beyond `support_end` f vanishes identically.
struct HalfLineProfile {
  std::string name;
  ScalarMap f;
  ScalarMap df;
  std::vector<double> breakpoints;  // interior points where f may only be C^1
  double support_end = kInfinity;
  std::optional<double> head_beta;
  double head_end = 0.0;
};

/// Sharp constant (p/|alpha-p+1|)^p.
double hardy_constant(double p, double alpha);

/// ∫_0^∞ |f|^p t^{alpha-p} dt <= C ∫_0^∞ |f'|^p t^alpha dt.
InequalityReport check_hardy(const HalfLineProfile& f, double p, double alpha,
                             const CheckOptions& opt = {});

/// t^beta on (0, t0], multiplied by the C^1 cutoff 1 - 3x^2 + 2x^3,
/// x = (t - t0)/(t1 - t0), on [t0, t1], zero beyond t1.
HalfLineProfile cutoff_power(double beta, double t0 = 1.0, double t1 = 2.0);

/// t^beta on (0,1] continued for t >= 1 by t^{-gamma}(1 + (beta+gamma)(1 - 1/t)),
/// which matches value and slope at t = 1 and decays to 0.
HalfLineProfile power_with_decaying_tail(double beta, double gamma);

struct SharpnessPoint {
  double epsilon = 0.0;
  double ratio_over_constant = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Ratios lhs/(C rhs) along f_ε = t^{(p-1-alpha)/p + ε}, each continued by a
/// decaying tail with gamma = ε. Requires alpha < p - 1 and decreasing ε.
std::vector<SharpnessPoint> hardy_sharpness_probe(double p, double alpha,
                                                  const std::vector<double>& epsilons,
                                                  const CheckOptions& opt = {});

}  // namespace gnlab
