#pragma once

#include <gnlab/quadrature.hpp>

#include <cstddef>
#include <filesystem>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gnlab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// h(λ) = λ^θ
struct PowerLaw {
  double theta = 0.0;
};
/// h(λ) = α λ^{α-1}, so that H(λ) = λ^α
struct PowerLawScaled {
  double alpha = 1.0;
};
/// h(λ) = (1-λ)^α on (0,1)
struct ShiftedPower {
  double alpha = 0.0;
};
struct ConstantWeight {
  double value = 1.0;
};

class TabulatedWeight;
/// Monotone piecewise-cubic (PCHIP) interpolant of tabulated samples.
struct Tabulated {
  std::shared_ptr<const TabulatedWeight> table;
};

using WeightFamily = std::variant<PowerLaw, PowerLawScaled, ShiftedPower, ConstantWeight, Tabulated>;

/// A weight h on (0,B) together with the offset C of H_C(λ) = ∫_0^λ h - C.
/// Immutable; the constructor validates positivity and integrability at 0.
class WeightSpec {
 public:
  WeightSpec(WeightFamily family, double B, double C);

  static WeightSpec power_law(double theta, double C = 0.0, double B = kInfinity);
  static WeightSpec power_law_scaled(double alpha, double C = 0.0, double B = kInfinity);
  static WeightSpec shifted_power(double alpha, double C);
  static WeightSpec constant(double value = 1.0, double C = 0.0, double B = kInfinity);
  /// First abscissa must be 0, the last one becomes B. At least four rows.
  static WeightSpec tabulated(std::vector<double> lambda, std::vector<double> h, double C = 0.0);
  /// Two-column CSV (lambda,h); an optional non-numeric header line is skipped.
  static WeightSpec tabulated_csv(const std::filesystem::path& path, double C = 0.0);

  const WeightFamily& family() const noexcept { return family_; }
  double B() const noexcept { return B_; }
  double C() const noexcept { return C_; }
  bool B_finite() const noexcept { return B_ < kInfinity; }
  /// H_C(0) = -C >= 0.
  bool hc0_nonneg() const noexcept { return C_ <= 0.0; }
  WeightSpec with_offset(double C) const { return WeightSpec(family_, B_, C); }

  std::string family_name() const;
  /// Family parameter (θ, α or the constant value); NaN for tabulated weights.
  double parameter() const;
  /// Compact, comma-free text form, e.g. "shifted_power(alpha=-2;B=1;C=-1)".
  std::string descriptor() const;
  /// Path of the source CSV for weights loaded by tabulated_csv, else empty.
  const std::string& source() const noexcept { return source_; }

 private:
  WeightFamily family_;
  double B_;
  double C_;
  std::string source_;
};

double eval_h(const WeightSpec& spec, double lambda);
/// h'(λ), analytic for closed-form families, interpolant derivative otherwise.
double eval_dh(const WeightSpec& spec, double lambda);
/// H_C(λ) on [0,B); H_C(0) = -C exactly.
double eval_H(const WeightSpec& spec, double lambda);
double eval_T(const WeightSpec& spec, double lambda);
/// T_{h,C}(λ) h(λ)^e with e ∈ {1/p, 2/p}.
double eval_G(const WeightSpec& spec, double p, double weight_exponent, double lambda);
/// d/dλ of eval_G: h^e + (e-1) H_C h^{e-2} h'.
double eval_dG(const WeightSpec& spec, double p, double weight_exponent, double lambda);

struct SupOptions {
  std::size_t nodes = 4096;
  int refinements = 2;
  std::size_t refine_nodes = 64;
  /// Closest approach to either end in the normalized coordinate t ∈ (0,1).
  double edge = 1e-10;
};

struct SupResult {
  double value = 0.0;
  double argmax = 0.0;
  /// Change of the estimate in the last refinement pass.
  double refinement_delta = 0.0;
};

/// Interior probe grid of (0,B): log-spaced toward both ends in t ∈ (0,1),
/// mapped by λ = B t (finite B) or λ = t/(1-t) (B = ∞).
std::vector<double> probe_grid(double B, std::size_t nodes = 4096, double edge = 1e-10);

/// sup of num/den over (0,B). Throws NonFiniteError on NaN/∞ samples.
SupResult sup_ratio(const ScalarMap& numerator, const ScalarMap& denominator, double B,
                    const SupOptions& opt = {});

/// Controlling function G of the two-sided bound c1 G <= |T| h^{2/p} <= c2 G.
struct GControl {
  std::string name;
  ScalarMap G;
  ScalarMap dG;
  bool constant = false;
};

/// G = |T_{h,C}| h^{2/p}, giving c1 = c2 = 1.
GControl natural_control(const WeightSpec& spec, double p);
GControl constant_control(double value = 1.0);

struct LedgerHypothesis {
  std::string theorem;  // "goal5" or "goal6"
  std::string name;
  bool holds = false;
  std::string detail;
};

struct ConstantsLedger {
  double p = 0.0;
  int n = 0;
  double c_np = 0.0;
  double c_hcp = 0.0;
  double c_hcp_delta = 0.0;
  double g_at_zero = 0.0;
  std::optional<double> d_goal5;
  std::optional<double> a_goal5;
  std::string g_control;
  bool g_constant = false;
  std::optional<double> e_goal6;
  std::optional<double> c1;
  std::optional<double> c2;
  std::optional<double> dtilde;
  std::optional<double> kappa;
  std::optional<double> a_omega;
  bool admissible_goal5 = false;
  bool admissible_goal6 = false;
  std::vector<LedgerHypothesis> hypotheses;

  /// First violated hypothesis of the given theorem, or nullptr.
  const LedgerHypothesis* first_violation(const std::string& theorem) const;
};

/// C(n,p) = (p - 1 + sqrt(n-1))^{p/2}.
double c_np(int n, double p);

/// A = (2(p-1)/(1-D^2))^{p/2}, defined for 0 <= D < 1.
double goal5_constant(double p, double D);

/// Populates every constant computable from the inputs. Goal6 fields stay
/// empty without a control function; kappa and A_Omega also need dtilde.
/// Throws HypothesisError if p <= 2.
ConstantsLedger build_ledger(const WeightSpec& spec, double p, int n,
                             std::optional<double> dtilde = std::nullopt,
                             const GControl* g_control = nullptr, const SupOptions& opt = {});

}  // namespace gnlab
