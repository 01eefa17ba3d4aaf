#pragma once

#include <cmath>

namespace gnlab {

/// Value with first and second derivative, propagated forward through
/// arithmetic and elementary functions.
struct Jet2 {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  static constexpr Jet2 variable(double x) { return {x, 1.0, 0.0}; }
  static constexpr Jet2 constant(double c) { return {c, 0.0, 0.0}; }
};

/// g∘f where (g, dg, d2g) are g and its derivatives evaluated at f.value.
constexpr Jet2 chain(double g, double dg, double d2g, const Jet2& f) {
  return {g, dg * f.d1, d2g * f.d1 * f.d1 + dg * f.d2};
}

constexpr Jet2 operator-(const Jet2& a) { return {-a.value, -a.d1, -a.d2}; }

constexpr Jet2 operator+(const Jet2& a, const Jet2& b) {
  return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2};
}
constexpr Jet2 operator-(const Jet2& a, const Jet2& b) {
  return {a.value - b.value, a.d1 - b.d1, a.d2 - b.d2};
}
constexpr Jet2 operator*(const Jet2& a, const Jet2& b) {
  return {a.value * b.value, a.d1 * b.value + a.value * b.d1,
          a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2};
}
constexpr Jet2 operator/(const Jet2& a, const Jet2& b) {
  // a * (1/b), with (1/b)' = -b'/b^2 and (1/b)'' = 2b'^2/b^3 - b''/b^2
  const double inv = 1.0 / b.value;
  const Jet2 recip = chain(inv, -inv * inv, 2.0 * inv * inv * inv, b);
  return a * recip;
}

constexpr Jet2 operator+(const Jet2& a, double c) { return {a.value + c, a.d1, a.d2}; }
constexpr Jet2 operator+(double c, const Jet2& a) { return a + c; }
constexpr Jet2 operator-(const Jet2& a, double c) { return {a.value - c, a.d1, a.d2}; }
constexpr Jet2 operator-(double c, const Jet2& a) { return {c - a.value, -a.d1, -a.d2}; }
constexpr Jet2 operator*(const Jet2& a, double c) { return {a.value * c, a.d1 * c, a.d2 * c}; }
constexpr Jet2 operator*(double c, const Jet2& a) { return a * c; }
constexpr Jet2 operator/(const Jet2& a, double c) { return a * (1.0 / c); }
constexpr Jet2 operator/(double c, const Jet2& a) { return Jet2::constant(c) / a; }

inline Jet2 pow(const Jet2& a, double k) {
  const double v = std::pow(a.value, k);
  const double dv = k * std::pow(a.value, k - 1.0);
  const double d2v = k * (k - 1.0) * std::pow(a.value, k - 2.0);
  return chain(v, dv, d2v, a);
}

inline Jet2 sqrt(const Jet2& a) {
  const double r = std::sqrt(a.value);
  return chain(r, 0.5 / r, -0.25 / (r * a.value), a);
}

inline Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.value);
  return chain(e, e, e, a);
}

inline Jet2 log(const Jet2& a) {
  const double inv = 1.0 / a.value;
  return chain(std::log(a.value), inv, -inv * inv, a);
}

inline Jet2 sin(const Jet2& a) {
  const double s = std::sin(a.value);
  return chain(s, std::cos(a.value), -s, a);
}

inline Jet2 cos(const Jet2& a) {
  const double c = std::cos(a.value);
  return chain(c, -std::sin(a.value), -c, a);
}

}  // namespace gnlab
