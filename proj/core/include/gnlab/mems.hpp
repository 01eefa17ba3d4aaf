#pragma once

#include <gnlab/calculus.hpp>
#include <gnlab/errors.hpp>
#include <gnlab/inequalities.hpp>
#include <gnlab/weights.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace gnlab {

/// Load profile f(s) = a + b s.
struct LoadProfile {
  double a = -1.0;
  double b = 0.0;
  double operator()(double s) const { return a + b * s; }
  std::string descriptor() const;
};

struct MemsConfig {
  int n = 2;
  double ball_radius = 1.0;
  double r_param = 0.1;
  LoadProfile f;
  double q = 2.0;
  std::size_t grid_size = 512;
  double newton_tol = 1e-10;
  int continuation_steps = 10;
  int max_newton_iterations = 50;

  /// Throws DomainError naming the offending field.
  void validate() const;
};

struct ContinuationPoint {
  double r = 0.0;
  double max_u = 0.0;
  int newton_iterations = 0;
};

struct MemsSolution {
  std::vector<double> grid;
  std::vector<double> w;
  double residual_norm = 0.0;
  bool converged = false;
  double max_u = 0.0;
  double r_reached = 0.0;
  std::vector<ContinuationPoint> path;
};

/// Continuation stalled; `last_good_r()` is an empirical lower bound for the
/// pull-in load.
class PullInError : public Error {
 public:
  PullInError(double last_good_r, const std::string& detail)
      : Error(detail), last_good_r_(last_good_r) {}
  double last_good_r() const noexcept { return last_good_r_; }

 private:
  double last_good_r_;
};

/// Residual of the discrete radial problem w'' + (n-1)w'/s = r f(s)/(1-w)^2,
/// max-norm.
double mems_residual(const MemsConfig& cfg, double r, const std::vector<double>& w);

/// Damped Newton with continuation in r from the zero state.
MemsSolution solve_mems(const MemsConfig& cfg);

/// Cubic spline through the solution mirrored to [-R, R], so the profile is
/// even and w'(0) = 0.
RadialField solution_field(const MemsSolution& sol, const MemsConfig& cfg);

/// (∫|∇u|^{2q}(1-u)^{-q})^{1/q} <= (p-1) r (∫|f|^q)^{1/q}, with the checks of
/// the general theorem for h = (1-λ)^{-q}, C = 1/(1-q) attached.
InequalityReport verify_mems_bound(const MemsSolution& sol, const MemsConfig& cfg,
                                   const CheckOptions& opt = {});

struct CompositionReport {
  double lhs = 0.0;  // 4 (∫|∇(1-u)^{1/2}|^p)^{2/p}
  double rhs = 0.0;  // (∫|∇u|^p (1-u)^{-p/2})^{2/p}
  double relative_difference = 0.0;
  double seminorm = 0.0;  // (∫|∇(1-u)^{1/2}|^p)^{1/p}
  double max_pointwise_residual = 0.0;
  double p = 0.0;
};

CompositionReport verify_composition(const MemsSolution& sol, const MemsConfig& cfg,
                                     const CheckOptions& opt = {});

struct RecipeResult {
  double tau_exponent = 0.0;
  double q = 0.0;
  double alpha = 0.0;
  double C = 0.0;
  WeightSpec weight = WeightSpec::constant();
  /// |T| h^{1/q}, constant for the ansatz.
  double g_value = 0.0;
  double g_max_deviation = 0.0;
  /// |H_C|^q h^{1-q}, also constant: (q-1)^{-q}.
  double product_value = 0.0;
  double product_max_deviation = 0.0;
  /// Largest c with |τ|^{-q} >= c |H_C|^q h^{1-q} on [0, lambda_max].
  double lambda_max = 0.0;
  double c_best = 0.0;
  /// Whether some c > 0 works on all of (0,1).
  bool holds_globally = false;
  ConstantsLedger ledger;
};

/// Shifted-power ansatz h = (1-λ)^{-q}, C = 1/(1-q) for τ(λ) = (1-λ)^k.
RecipeResult recipe_check(double tau_exponent, double q, double lambda_max = 0.99, int n = 2);

/// CSV with columns s,w,w_prime,w_double_prime plus a JSON sidecar with the
/// configuration and convergence data. Returns the CSV path.
std::filesystem::path save_solution(const MemsSolution& sol, const MemsConfig& cfg,
                                    const std::filesystem::path& csv_path);

struct LoadedSolution {
  MemsSolution solution;
  MemsConfig config;
};
/// Reads a CSV written by save_solution and its sidecar (same stem, .json).
LoadedSolution load_solution(const std::filesystem::path& csv_path);

}  // namespace gnlab
