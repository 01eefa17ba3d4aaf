#pragma once

#include <vector>

namespace gnlab {

/// Interpolating cubic spline with not-a-knot end conditions.
class CubicSpline {
 public:
  /// Needs at least four strictly increasing abscissae.
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double value(double t) const;
  double d1(double t) const;
  double d2(double t) const;
  /// Value, first and second derivative at t in one pass.
  void eval(double t, double& v, double& dv, double& d2v) const;

  const std::vector<double>& knots() const noexcept { return x_; }
  double front() const noexcept { return x_.front(); }
  double back() const noexcept { return x_.back(); }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the knots
};

}  // namespace gnlab
