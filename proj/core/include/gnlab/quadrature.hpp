#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gnlab {

using ScalarMap = std::function<double(double)>;

/// Which endpoints of the integration interval receive geometrically graded
/// panels before adaptive refinement starts.
enum class EndpointGrading { none, left, right, both };

struct QuadOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  std::size_t max_panels = 100000;
  int grade_levels = 8;
  EndpointGrading grading = EndpointGrading::both;
};

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t panels_used = 0;
  bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature of f over (a, b).
///
/// Only interior nodes are sampled, so integrable endpoint singularities are
/// admissible. The worst panel is bisected until the summed |K15 - G7|
/// estimate drops below max(abs_tol, rel_tol*|value|) or the panel budget is
/// exhausted. A panel that can no longer be split in floating point, or an
/// infinite sample, also stops refinement with converged = false.
/// Throws NonFiniteError if f returns NaN.
QuadResult integrate_1d(const ScalarMap& f, double a, double b, const QuadOptions& opt = {});

/// Same, with the initial partition given by sorted breakpoints (at least
/// two). Grading applies only to the outermost intervals.
QuadResult integrate_1d(const ScalarMap& f, std::span<const double> breakpoints,
                        const QuadOptions& opt = {});

/// (n-1)-measure of the unit sphere in R^n: 2 pi^{n/2} / Gamma(n/2).
double unit_sphere_measure(int n);

struct RadialMeasure {
  int n = 2;
  double r_in = 0.0;
  double r_out = 1.0;
  double theta_n = 0.0;
};

RadialMeasure make_radial_measure(int n, double r_in, double r_out);

/// ∫_{r_in < |x| < r_out} F(|x|) dx = theta_n ∫ F(s) s^{n-1} ds.
/// Interior breakpoints (e.g. spline knots) may be supplied; values outside
/// (r_in, r_out) are ignored.
QuadResult integrate_radial(const ScalarMap& f, const RadialMeasure& measure,
                            const QuadOptions& opt = {},
                            std::span<const double> breakpoints = {});

}  // namespace gnlab
