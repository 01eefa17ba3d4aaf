#pragma once

#include <gnlab/calculus.hpp>
#include <gnlab/quadrature.hpp>
#include <gnlab/seminorm.hpp>
#include <gnlab/weights.hpp>

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace gnlab {

enum class TheoremId { classical_gn, main2, goal3, goal4, goal5, goal6, hardy, counterexample };
enum class Verdict { holds, fails, inconclusive };

std::string to_string(TheoremId id);
std::string to_string(Verdict v);
TheoremId theorem_from_string(const std::string& name);

struct RhsTerm {
  std::string label;
  QuadResult value;
  double multiplier = 1.0;
};

struct HypothesisCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

/// Both sides are compared in the form the theorem is stated in; for the
/// 2/p-power forms `lhs_compared` is lhs^{2/p} and `rhs_compared` is the
/// multiplier-weighted sum of rhs_term^{2/p}.
struct InequalityReport {
  TheoremId theorem_id = TheoremId::main2;
  QuadResult lhs;
  std::vector<RhsTerm> rhs_terms;
  double constant = 1.0;
  double ratio = 0.0;
  double lhs_compared = 0.0;
  double lhs_sigma = 0.0;
  double rhs_compared = 0.0;
  double rhs_sigma = 0.0;
  double exponent = 1.0;  // power applied to each integral before comparing
  std::vector<HypothesisCheck> hypotheses;
  Verdict verdict = Verdict::inconclusive;
  std::vector<std::string> notes;
  nlohmann::json config_echo = nlohmann::json::object();

  int n = 0;
  double p = 0.0;
  std::string weight;
  std::string field;

  bool all_hypotheses_hold() const;
};

/// holds if L+3σ_L <= R-3σ_R; fails if every hypothesis holds and
/// L-3σ_L > R+3σ_R; otherwise inconclusive.
Verdict decide(double L, double sigma_L, double R, double sigma_R, bool hypotheses_hold);

/// Fills lhs_compared/rhs_compared, their σ, the ratio and the verdict
/// from lhs, rhs_terms and exponent.
void finalize(InequalityReport& report);

/// Smallest upper bound ((b + sqrt(b^2+4a))/2)^2 for I with I <= a + b I^{1/2}.
double absorption_root(double a, double b);

struct CheckOptions {
  QuadOptions quad;
};

InequalityReport check_main2(const RadialField& field, const WeightSpec& h_spec, double p,
                             const CheckOptions& opt = {});
InequalityReport check_goal3(const RadialField& field, const WeightSpec& h_spec, double p,
                             const CheckOptions& opt = {});
InequalityReport check_goal4(const RadialField& field, const WeightSpec& h_spec, double p,
                             const CheckOptions& opt = {});
InequalityReport check_goal5(const RadialField& field, const ConstantsLedger& ledger,
                             const WeightSpec& h_spec, const CheckOptions& opt = {});
/// `dtilde_heuristic` marks a D̃ that came from estimate_dtilde rather than
/// from a proven bound; it is echoed in the notes.
InequalityReport check_goal6(const RadialField& field, const ConstantsLedger& ledger,
                             const WeightSpec& h_spec, bool dtilde_heuristic = true,
                             const CheckOptions& opt = {});
/// Ratio ‖∇u‖_q / (‖u‖_r^{1/2} ‖∇²u‖_p^{1/2} + ‖u‖_r); always `holds`.
InequalityReport check_classical_gn(const RadialField& field, double p, double q, double r,
                                    const CheckOptions& opt = {});

/// Harmonic profile on the annulus 1 < |x| < R, weight λ^{-alpha_tilde}.
InequalityReport run_counterexample(int n, double R, double p, double alpha_tilde = 0.0,
                                    const CheckOptions& opt = {});

struct DtildeEstimate {
  double lower_bound = 0.0;
  /// lower_bound times the safety factor.
  double suggested = 0.0;
  double safety_factor = 1.5;
  std::vector<double> ratios;
};

/// max over the family of ‖Δ♠w‖_q / ‖Δw‖_q: an empirical lower bound for D̃.
DtildeEstimate estimate_dtilde(double q, const std::vector<RadialField>& family,
                               const CheckOptions& opt = {}, double safety_factor = 1.5);

}  // namespace gnlab
