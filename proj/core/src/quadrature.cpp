#include <gnlab/quadrature.hpp>

#include <gnlab/errors.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace gnlab {

namespace {

// Kronrod abscissae on [-1, 1] (positive half, descending); odd indices are
// the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool infinite;
};

bool worse(const Panel& x, const Panel& y) { return x.error < y.error; }

double sample(const ScalarMap& f, double x, bool& infinite) {
  const double v = f(x);
  if (std::isnan(v)) {
    throw NonFiniteError("integrand returned NaN at x = " + std::to_string(x));
  }
  if (std::isinf(v)) infinite = true;
  return v;
}

Panel gauss_kronrod(const ScalarMap& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  bool infinite = false;
  const double fc = sample(f, center, infinite);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = sample(f, center - dx, infinite);
    const double f2 = sample(f, center + dx, infinite);
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  Panel p{a, b, kronrod * half, std::abs((kronrod - gauss) * half), infinite};
  if (infinite || !std::isfinite(p.value)) {
    p.infinite = true;
    p.error = std::numeric_limits<double>::infinity();
  }
  return p;
}

bool splittable(double a, double b) {
  const double mid = 0.5 * (a + b);
  if (!(mid > a && mid < b)) return false;
  const double scale = std::max(std::abs(a), std::abs(b));
  const double ulp = std::nextafter(scale, std::numeric_limits<double>::infinity()) - scale;
  return (b - a) > 1024.0 * ulp;
}

void append_graded(std::vector<double>& cuts, double a, double b, bool grade_left,
                   bool grade_right, int levels) {
  // cuts receives interior points of [a, b] in increasing order.
  const double len = b - a;
  std::vector<double> left, right;
  for (int k = levels; k >= 1; --k) {
    const double frac = std::ldexp(1.0, -(k + 1));
    if (grade_left) left.push_back(a + len * frac);
    if (grade_right) right.push_back(b - len * frac);
  }
  cuts.insert(cuts.end(), left.begin(), left.end());
  if (grade_left || grade_right) cuts.push_back(a + 0.5 * len);
  std::reverse(right.begin(), right.end());
  cuts.insert(cuts.end(), right.begin(), right.end());
}

}  // namespace

QuadResult integrate_1d(const ScalarMap& f, std::span<const double> breakpoints,
                        const QuadOptions& opt) {
  if (breakpoints.size() < 2) {
    throw DomainError("integrate_1d needs at least two breakpoints");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > breakpoints[i - 1])) {
      throw DomainError("integrate_1d requires strictly increasing breakpoints (a < b)");
    }
  }

  const bool grade_left =
      opt.grading == EndpointGrading::left || opt.grading == EndpointGrading::both;
  const bool grade_right =
      opt.grading == EndpointGrading::right || opt.grading == EndpointGrading::both;
  const std::size_t last = breakpoints.size() - 2;

  std::vector<double> nodes{breakpoints.front()};
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const bool gl = grade_left && i == 0 && opt.grade_levels > 0;
    const bool gr = grade_right && i == last && opt.grade_levels > 0;
    append_graded(nodes, breakpoints[i], breakpoints[i + 1], gl, gr, opt.grade_levels);
    nodes.push_back(breakpoints[i + 1]);
  }

  std::vector<Panel> heap;
  heap.reserve(std::min<std::size_t>(opt.max_panels + nodes.size(), 1u << 16));
  double total = 0.0;
  double error = 0.0;
  bool infinite = false;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    Panel p = gauss_kronrod(f, nodes[i], nodes[i + 1]);
    infinite = infinite || p.infinite;
    total += p.value;
    error += p.error;
    heap.push_back(p);
  }
  std::make_heap(heap.begin(), heap.end(), worse);

  const auto target = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
  bool stalled = infinite;
  std::size_t iterations = 0;
  while (!stalled && error > target() && heap.size() < opt.max_panels) {
    std::pop_heap(heap.begin(), heap.end(), worse);
    const Panel worst = heap.back();
    if (!splittable(worst.a, worst.b)) {
      stalled = true;
      break;
    }
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gauss_kronrod(f, worst.a, mid);
    const Panel right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), worse);
    if (left.infinite || right.infinite) stalled = true;
    // Running sums drift; resynchronise periodically.
    if (++iterations % 256 == 0) {
      total = 0.0;
      error = 0.0;
      for (const auto& p : heap) {
        total += p.value;
        error += p.error;
      }
    }
  }

  // Final sums in position order so the rounding is independent of heap layout.
  std::sort(heap.begin(), heap.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  QuadResult result;
  for (const auto& p : heap) {
    result.value += p.value;
    result.abs_error_estimate += p.error;
  }
  result.panels_used = heap.size();
  result.converged =
      !stalled && std::isfinite(result.value) &&
      result.abs_error_estimate <= std::max(opt.abs_tol, opt.rel_tol * std::abs(result.value));
  return result;
}

QuadResult integrate_1d(const ScalarMap& f, double a, double b, const QuadOptions& opt) {
  const std::array<double, 2> ends{a, b};
  return integrate_1d(f, std::span<const double>(ends), opt);
}

double unit_sphere_measure(int n) {
  if (n < 1) throw DomainError("dimension must be >= 1");
  const double half = 0.5 * n;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

RadialMeasure make_radial_measure(int n, double r_in, double r_out) {
  if (n < 1) throw DomainError("dimension must be >= 1");
  if (!(r_in >= 0.0) || !(r_out > r_in)) {
    throw DomainError("radial measure requires 0 <= r_in < r_out");
  }
  return {n, r_in, r_out, unit_sphere_measure(n)};
}

QuadResult integrate_radial(const ScalarMap& f, const RadialMeasure& measure,
                            const QuadOptions& opt, std::span<const double> breakpoints) {
  std::vector<double> cuts{measure.r_in};
  for (double b : breakpoints) {
    if (b > cuts.back() && b < measure.r_out) cuts.push_back(b);
  }
  cuts.push_back(measure.r_out);

  const int power = measure.n - 1;
  const ScalarMap weighted = [&](double s) {
    const double v = f(s);
    return v == 0.0 ? 0.0 : v * std::pow(s, power);
  };
  QuadOptions scaled = opt;
  // Tolerances refer to the final (theta_n-scaled) integral.
  scaled.abs_tol = opt.abs_tol / measure.theta_n;
  QuadResult r = integrate_1d(weighted, std::span<const double>(cuts), scaled);
  r.value *= measure.theta_n;
  r.abs_error_estimate *= measure.theta_n;
  return r;
}

}  // namespace gnlab
