#include <gnlab/spline.hpp>

#include <gnlab/errors.hpp>

#include <algorithm>
#include <cstddef>

namespace gnlab {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t N = x_.size();
  if (N != y_.size()) throw DomainError("spline: abscissae and ordinates differ in length");
  if (N < 4) throw DomainError("spline: at least four knots required");
  for (std::size_t i = 1; i < N; ++i) {
    if (!(x_[i] > x_[i - 1])) throw DomainError("spline: abscissae must be strictly increasing");
  }

  std::vector<double> h(N - 1), d(N - 1);
  for (std::size_t i = 0; i + 1 < N; ++i) {
    h[i] = x_[i + 1] - x_[i];
    d[i] = (y_[i + 1] - y_[i]) / h[i];
  }

  // Unknowns M_1..M_{N-2}; the not-a-knot conditions eliminate M_0, M_{N-1}.
  const std::size_t m = N - 2;
  std::vector<double> lo(m, 0.0), di(m, 0.0), up(m, 0.0), rhs(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = k + 1;
    lo[k] = h[i - 1];
    di[k] = 2.0 * (h[i - 1] + h[i]);
    up[k] = h[i];
    rhs[k] = 6.0 * (d[i] - d[i - 1]);
  }
  {
    const double a = h[0], b = h[1];
    di[0] = (a + b) * (a + 2.0 * b) / b;
    up[0] = (b * b - a * a) / b;
    lo[0] = 0.0;
  }
  {
    const double a = h[N - 3], b = h[N - 2];
    lo[m - 1] = (a * a - b * b) / a;
    di[m - 1] = (a + b) * (2.0 * a + b) / a;
    up[m - 1] = 0.0;
  }

  // Thomas algorithm
  for (std::size_t k = 1; k < m; ++k) {
    const double w = lo[k] / di[k - 1];
    di[k] -= w * up[k - 1];
    rhs[k] -= w * rhs[k - 1];
  }
  std::vector<double> M(m);
  M[m - 1] = rhs[m - 1] / di[m - 1];
  for (std::size_t k = m - 1; k-- > 0;) M[k] = (rhs[k] - up[k] * M[k + 1]) / di[k];

  m_.assign(N, 0.0);
  for (std::size_t k = 0; k < m; ++k) m_[k + 1] = M[k];
  m_[0] = ((h[0] + h[1]) * m_[1] - h[0] * m_[2]) / h[1];
  m_[N - 1] = ((h[N - 2] + h[N - 3]) * m_[N - 2] - h[N - 2] * m_[N - 3]) / h[N - 3];
}

void CubicSpline::eval(double t, double& v, double& dv, double& d2v) const {
  if (!(t >= x_.front() && t <= x_.back())) {
    throw DomainError("spline evaluated outside its knot range");
  }
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t i = static_cast<std::size_t>(std::distance(x_.begin(), it));
  i = std::clamp<std::size_t>(i, 1, x_.size() - 1) - 1;
  const double hh = x_[i + 1] - x_[i];
  const double A = x_[i + 1] - t;
  const double Bt = t - x_[i];
  const double Mi = m_[i], Mj = m_[i + 1];
  const double ci = y_[i] / hh - Mi * hh / 6.0;
  const double cj = y_[i + 1] / hh - Mj * hh / 6.0;
  v = Mi * A * A * A / (6.0 * hh) + Mj * Bt * Bt * Bt / (6.0 * hh) + ci * A + cj * Bt;
  dv = -Mi * A * A / (2.0 * hh) + Mj * Bt * Bt / (2.0 * hh) - ci + cj;
  d2v = Mi * A / hh + Mj * Bt / hh;
}

double CubicSpline::value(double t) const {
  double v, dv, d2v;
  eval(t, v, dv, d2v);
  return v;
}
double CubicSpline::d1(double t) const {
  double v, dv, d2v;
  eval(t, v, dv, d2v);
  return dv;
}
double CubicSpline::d2(double t) const {
  double v, dv, d2v;
  eval(t, v, dv, d2v);
  return d2v;
}

}  // namespace gnlab
