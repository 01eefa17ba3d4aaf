#pragma once

#include <gnlab/jet.hpp>
#include <gnlab/quadrature.hpp>
#include <gnlab/spline.hpp>
#include <gnlab/weights.hpp>

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace gnlab {

/// Radial profile: maps the jet of s to the jet of w(s).
using Profile = std::function<Jet2(const Jet2&)>;

struct FieldOptions {
  bool dirichlet = true;
  /// Probe 0 < w < B on the interior at construction.
  bool check_range = true;
  std::vector<double> breakpoints;
};

/// u(x) = w(|x|) on the ball (r_in = 0) or annulus r_in < |x| < r_out.
class RadialField {
 public:
  RadialField(Profile profile, int n, double r_in, double r_out, double B, std::string descriptor,
              FieldOptions opt = {});

  Jet2 jet(double s) const;
  double value(double s) const { return jet(s).value; }

  int n() const noexcept { return n_; }
  double r_in() const noexcept { return r_in_; }
  double r_out() const noexcept { return r_out_; }
  double B() const noexcept { return B_; }
  bool is_ball() const noexcept { return r_in_ == 0.0; }
  bool dirichlet() const noexcept { return dirichlet_; }
  const std::string& descriptor() const noexcept { return descriptor_; }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const Profile& profile() const noexcept { return profile_; }
  RadialMeasure measure() const { return make_radial_measure(n_, r_in_, r_out_); }

  /// c·u, with B scaled accordingly.
  RadialField scaled(double c) const;

  /// min and max of w over an interior probe grid.
  std::pair<double, double> range(std::size_t nodes = 2001) const;
  /// Interior probe radii (open interval), uniformly spaced.
  std::vector<double> probe_radii(std::size_t nodes = 1000) const;
  /// Radii in the interior where w' changes sign (sampled).
  std::vector<double> interior_critical_points(std::size_t nodes = 2001) const;

 private:
  Profile profile_;
  int n_;
  double r_in_;
  double r_out_;
  double B_;
  std::string descriptor_;
  bool dirichlet_;
  std::vector<double> breakpoints_;
};

/// All pointwise radial operators at one radius, from a single jet.
struct RadialOps {
  double w = 0.0;
  double dw = 0.0;
  double d2w = 0.0;
  double grad = 0.0;
  double laplacian = 0.0;
  double infinity_laplacian = 0.0;
  double spade = 0.0;
  double hessian = 0.0;
  bool critical = false;
};
RadialOps radial_ops(const RadialField& field, double s);

double grad_norm(const RadialField& field, double s);
/// w'' + (n-1) w'/s; n w''(0) at the center of a ball.
double laplacian(const RadialField& field, double s);
/// w'' where w' != 0, else 0.
double infinity_laplacian(const RadialField& field, double s);
/// infinity_laplacian - laplacian.
double spade(const RadialField& field, double s);
/// Frobenius norm sqrt(w''^2 + (n-1)(w'/s)^2) of the radial Hessian.
double hessian_frobenius(const RadialField& field, double s);

/// Φ_p(t) = |t|^{p-2} t, and 0 at 0.
double phi_p(double t, double p);

/// ∫_{∂Ω} Φ_p(∇u)·ν H_C(u) dσ for the radial field; the inner sphere of an
/// annulus enters with the outward normal -x/|x|.
double boundary_flux(const RadialField& field, double p, const WeightSpec& h_spec);

/// Jet-capable scalar map λ ↦ W̃(λ).
using JetMap = std::function<Jet2(const Jet2&)>;

/// Radial field of W̃(w(s)), where W = W̃'. Requires 0 < w < B of the input.
RadialField compose(const RadialField& field, const JetMap& Wtilde, const std::string& name);

/// Residuals of the five chain-rule identities for W̃(v) at s: gradient,
/// Hessian (both radial eigenvalues), infinity Laplacian, Laplacian, spade.
struct CompositionResiduals {
  double grad = 0.0;
  double hessian = 0.0;
  double infinity_laplacian = 0.0;
  double laplacian = 0.0;
  double spade = 0.0;
  double max() const;
};
CompositionResiduals composition_residuals(const RadialField& v, const RadialField& composed,
                                           const ScalarMap& W, const ScalarMap& dW, double s);

namespace profiles {

/// a (1 - (s/R)^2)
RadialField paraboloid(int n, double amplitude = 1.0, double R = 1.0, double B = kInfinity);
/// a (1 - (s/R)^2)^k
RadialField paraboloid_power(int n, double k, double amplitude = 1.0, double R = 1.0,
                             double B = kInfinity);
/// a cos(pi s / (2R))
RadialField cosine_bump(int n, double amplitude = 1.0, double R = 1.0, double B = kInfinity);
/// 1 - s^{2-n} for n >= 3, log s for n = 2, on the annulus 1 < s < R.
RadialField harmonic_annulus(int n, double R);
/// Profile interpolated by a cubic spline; the spline must cover [r_in, r_out].
RadialField spline_field(std::shared_ptr<const CubicSpline> spline, int n, double r_out, double B,
                         std::string descriptor, bool dirichlet = true, bool check_range = true);

}  // namespace profiles

}  // namespace gnlab
