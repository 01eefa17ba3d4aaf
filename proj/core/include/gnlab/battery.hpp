#pragma once

#include <gnlab/calculus.hpp>
#include <gnlab/inequalities.hpp>
#include <gnlab/weights.hpp>

#include <optional>
#include <string>
#include <vector>

namespace gnlab {

/// Serializable description of a built-in radial profile.
struct ProfileSpec {
  // paraboloid | paraboloid_power | cosine_bump | harmonic_annulus | solution
  std::string kind = "paraboloid";
  double amplitude = 1.0;
  double k = 2.0;        // paraboloid_power exponent
  double radius = 1.0;   // ball radius, or outer radius of the annulus
  std::string path;      // solution CSV written by save_solution

  RadialField build(int n, double B = kInfinity) const;
  std::string descriptor() const;
};

struct CheckSpec {
  std::string id;
  TheoremId theorem = TheoremId::main2;
  ProfileSpec profile;
  WeightSpec weight = WeightSpec::constant();
  double p = 2.0;
  int n = 2;
  /// goal6: D̃ (heuristic unless dtilde_supplied; estimated when empty), control function
  std::optional<double> dtilde;
  bool dtilde_supplied = false;
  std::string control = "natural";  // natural | constant
  double control_value = 1.0;
  /// classical_gn exponents (p is the Hessian exponent)
  double q = 2.0;
  double r = 2.0;
  CheckOptions options;

  /// Compact "key=value;..." echo of every parameter.
  std::string parameters() const;
};

struct CheckOutcome {
  CheckSpec spec;
  bool applicable = false;
  std::string skip_reason;
  std::optional<InequalityReport> report;
};

/// Runs one check; a violated hypothesis makes the outcome not applicable.
CheckOutcome run_check(const CheckSpec& spec);

/// D̃ suggestion for dimension n and exponent q from the built-in profiles on
/// the unit ball.
DtildeEstimate battery_dtilde(int n, double q, const CheckOptions& opt = {});

/// The standard battery: p ∈ {2, 2.1, 2.5, 3, 4}, n ∈ {2, 3, 5, 6}, seven
/// weights on (0,1), three profiles, all applicable checkers.
std::vector<CheckSpec> standard_battery();

}  // namespace gnlab
