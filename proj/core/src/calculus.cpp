#include <gnlab/calculus.hpp>

#include <gnlab/errors.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace gnlab {

namespace {

std::string fmt(double x) {
  if (x == 0.0) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

bool is_critical(const Jet2& w) { return std::abs(w.d1) <= 1e-14 * (1.0 + std::abs(w.d2)); }

// w'/s, with the removable limit w''(0) at the center of a ball
double tangential(double s, const Jet2& w) { return s == 0.0 ? w.d2 : w.d1 / s; }

Jet2 checked_jet(const RadialField& field, double s) {
  if (!(s >= field.r_in() && s <= field.r_out())) {
    throw DomainError("radius " + fmt(s) + " outside [" + fmt(field.r_in()) + ", " +
                      fmt(field.r_out()) + "]");
  }
  return field.jet(s);
}

}  // namespace

RadialField::RadialField(Profile profile, int n, double r_in, double r_out, double B,
                         std::string descriptor, FieldOptions opt)
    : profile_(std::move(profile)), n_(n), r_in_(r_in), r_out_(r_out), B_(B),
      descriptor_(std::move(descriptor)), dirichlet_(opt.dirichlet),
      breakpoints_(std::move(opt.breakpoints)) {
  if (!profile_) throw DomainError("radial field without profile");
  if (n_ < 2) throw DomainError("radial fields need dimension n >= 2");
  if (!(r_in_ >= 0.0) || !(r_out_ > r_in_) || !std::isfinite(r_out_)) {
    throw DomainError("radial field needs 0 <= r_in < r_out < inf");
  }
  if (!(B_ > 0.0)) throw DomainError("radial field range bound B must be positive");
  if (dirichlet_) {
    const double wb = jet(r_out_).value;
    if (!(std::abs(wb) <= 1e-12)) {
      throw DomainError("Dirichlet field " + descriptor_ + " has w(r_out) = " + fmt(wb));
    }
  }
  if (is_ball()) {
    const double slope = jet(0.0).d1;
    if (!(std::abs(slope) <= 1e-10)) {
      throw DomainError("field " + descriptor_ + " on a ball has w'(0) = " + fmt(slope));
    }
  }
  if (opt.check_range) {
    const auto [lo, hi] = range();
    if (!(lo > 0.0) || !(hi < B_)) {
      throw DomainError("field " + descriptor_ + " leaves (0, " + fmt(B_) + "): range [" +
                        fmt(lo) + ", " + fmt(hi) + "]");
    }
  }
  std::sort(breakpoints_.begin(), breakpoints_.end());
}

Jet2 RadialField::jet(double s) const { return profile_(Jet2::variable(s)); }

RadialField RadialField::scaled(double c) const {
  if (!(c > 0.0)) throw DomainError("fields can only be scaled by c > 0");
  Profile base = profile_;
  FieldOptions opt;
  opt.dirichlet = dirichlet_;
  opt.breakpoints = breakpoints_;
  return RadialField([base, c](const Jet2& s) { return c * base(s); }, n_, r_in_, r_out_, c * B_,
                     fmt(c) + "*" + descriptor_, opt);
}

std::vector<double> RadialField::probe_radii(std::size_t nodes) const {
  std::vector<double> s;
  s.reserve(nodes);
  const double width = r_out_ - r_in_;
  for (std::size_t i = 0; i < nodes; ++i) {
    s.push_back(r_in_ + width * (static_cast<double>(i) + 0.5) / static_cast<double>(nodes));
  }
  return s;
}

std::pair<double, double> RadialField::range(std::size_t nodes) const {
  double lo = kInfinity, hi = -kInfinity;
  for (double s : probe_radii(nodes)) {
    const double w = value(s);
    if (!std::isfinite(w)) throw NonFiniteError("non-finite profile value at s = " + fmt(s));
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  return {lo, hi};
}

std::vector<double> RadialField::interior_critical_points(std::size_t nodes) const {
  std::vector<double> out;
  const auto s = probe_radii(nodes);
  double prev = jet(s.front()).d1;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double cur = jet(s[i]).d1;
    if ((prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0) || cur == 0.0) {
      out.push_back(s[i]);
    }
    prev = cur;
  }
  return out;
}

RadialOps radial_ops(const RadialField& field, double s) {
  const Jet2 w = checked_jet(field, s);
  RadialOps o;
  o.w = w.value;
  o.dw = w.d1;
  o.d2w = w.d2;
  o.grad = std::abs(w.d1);
  o.critical = is_critical(w);
  const double t = tangential(s, w);
  o.laplacian = w.d2 + (field.n() - 1) * t;
  o.infinity_laplacian = o.critical ? 0.0 : w.d2;
  o.spade = o.infinity_laplacian - o.laplacian;
  o.hessian = std::sqrt(w.d2 * w.d2 + (field.n() - 1) * t * t);
  return o;
}

double grad_norm(const RadialField& field, double s) { return radial_ops(field, s).grad; }
double laplacian(const RadialField& field, double s) { return radial_ops(field, s).laplacian; }
double infinity_laplacian(const RadialField& field, double s) {
  return radial_ops(field, s).infinity_laplacian;
}
double spade(const RadialField& field, double s) { return radial_ops(field, s).spade; }
double hessian_frobenius(const RadialField& field, double s) {
  return radial_ops(field, s).hessian;
}

double phi_p(double t, double p) {
  if (t == 0.0) return 0.0;
  return std::pow(std::abs(t), p - 2.0) * t;
}

double boundary_flux(const RadialField& field, double p, const WeightSpec& h_spec) {
  if (!(p > 1.0)) throw DomainError("boundary flux needs p > 1");
  const double theta = unit_sphere_measure(field.n());
  const auto sphere = [&](double r) {
    const Jet2 w = field.jet(r);
    return theta * std::pow(r, field.n() - 1) * phi_p(w.d1, p) * eval_H(h_spec, w.value);
  };
  double flux = sphere(field.r_out());
  if (!field.is_ball()) flux -= sphere(field.r_in());
  return flux;
}

RadialField compose(const RadialField& field, const JetMap& Wtilde, const std::string& name) {
  const auto [lo, hi] = field.range();
  if (!(lo > 0.0) || !(hi < field.B())) {
    throw DomainError("compose: field leaves (0, " + fmt(field.B()) + ")");
  }
  Profile base = field.profile();
  FieldOptions opt;
  opt.check_range = false;
  opt.breakpoints = field.breakpoints();
  opt.dirichlet = false;
  if (field.dirichlet()) {
    const double wb = Wtilde(Jet2::constant(field.value(field.r_out()))).value;
    opt.dirichlet = std::abs(wb) <= 1e-12;
  }
  return RadialField([base, Wtilde](const Jet2& s) { return Wtilde(base(s)); }, field.n(),
                     field.r_in(), field.r_out(), kInfinity, name + "(" + field.descriptor() + ")",
                     opt);
}

double CompositionResiduals::max() const {
  return std::max({grad, hessian, infinity_laplacian, laplacian, spade});
}

CompositionResiduals composition_residuals(const RadialField& v, const RadialField& composed,
                                           const ScalarMap& W, const ScalarMap& dW, double s) {
  const auto rel = [](double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
  };
  const Jet2 jv = checked_jet(v, s);
  const Jet2 jc = checked_jet(composed, s);
  const double Wv = W(jv.value);
  const double dWv = dW(jv.value);
  const double grad2 = jv.d1 * jv.d1;

  CompositionResiduals r;
  r.grad = rel(jc.d1, Wv * jv.d1);
  r.hessian = std::max(rel(jc.d2, dWv * grad2 + Wv * jv.d2),
                       rel(tangential(s, jc), Wv * tangential(s, jv)));
  r.infinity_laplacian =
      is_critical(jv) ? 0.0 : rel(infinity_laplacian(composed, s), dWv * grad2 + Wv * jv.d2);
  r.laplacian = rel(laplacian(composed, s), dWv * grad2 + Wv * laplacian(v, s));
  r.spade = is_critical(jv) ? 0.0 : rel(spade(composed, s), Wv * spade(v, s));
  return r;
}

namespace profiles {

RadialField paraboloid(int n, double amplitude, double R, double B) {
  return RadialField(
      [amplitude, R](const Jet2& s) {
        const Jet2 x = s / R;
        return amplitude * (1.0 - x * x);
      },
      n, 0.0, R, B, "paraboloid(a=" + fmt(amplitude) + ";R=" + fmt(R) + ")");
}

RadialField paraboloid_power(int n, double k, double amplitude, double R, double B) {
  if (!(k >= 1.0)) throw DomainError("paraboloid_power needs k >= 1");
  return RadialField(
      [amplitude, R, k](const Jet2& s) {
        const Jet2 x = s / R;
        const Jet2 base = 1.0 - x * x;
        if (base.value <= 0.0) return Jet2{0.0, 0.0, 0.0};
        return amplitude * pow(base, k);
      },
      n, 0.0, R, B,
      "paraboloid_power(a=" + fmt(amplitude) + ";k=" + fmt(k) + ";R=" + fmt(R) + ")");
}

RadialField cosine_bump(int n, double amplitude, double R, double B) {
  const double k = std::numbers::pi / (2.0 * R);
  return RadialField([amplitude, k](const Jet2& s) { return amplitude * cos(k * s); }, n, 0.0, R,
                     B, "cosine_bump(a=" + fmt(amplitude) + ";R=" + fmt(R) + ")");
}

RadialField harmonic_annulus(int n, double R) {
  if (!(R > 1.0)) throw DomainError("harmonic annulus needs R > 1");
  FieldOptions opt;
  opt.dirichlet = false;
  if (n == 2) {
    return RadialField([](const Jet2& s) { return log(s); }, 2, 1.0, R, kInfinity,
                       "harmonic_annulus(n=2;R=" + fmt(R) + ")", opt);
  }
  const double k = 2.0 - n;
  return RadialField([k](const Jet2& s) { return 1.0 - pow(s, k); }, n, 1.0, R, 1.0,
                     "harmonic_annulus(n=" + std::to_string(n) + ";R=" + fmt(R) + ")", opt);
}

RadialField spline_field(std::shared_ptr<const CubicSpline> spline, int n, double r_out, double B,
                         std::string descriptor, bool dirichlet, bool check_range) {
  if (!spline) throw DomainError("spline field without spline");
  if (spline->front() > 0.0 || spline->back() < r_out) {
    throw DomainError("spline does not cover [0, r_out]");
  }
  FieldOptions opt;
  opt.dirichlet = dirichlet;
  opt.check_range = check_range;
  for (double x : spline->knots()) {
    if (x > 0.0 && x < r_out) opt.breakpoints.push_back(x);
  }
  return RadialField(
      [spline](const Jet2& s) {
        double v, dv, d2v;
        spline->eval(s.value, v, dv, d2v);
        return chain(v, dv, d2v, s);
      },
      n, 0.0, r_out, B, std::move(descriptor), std::move(opt));
}

}  // namespace profiles

}  // namespace gnlab
