#include <gnlab/weights.hpp>

#include <gnlab/errors.hpp>

// pchip.hpp in Boost 1.74 calls isnan unqualified
#include <math.h>
#include <boost/math/interpolators/pchip.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gnlab {

class TabulatedWeight {
 public:
  TabulatedWeight(std::vector<double> lambda, std::vector<double> h)
      : knots_(lambda), values_(h),
        spline_(std::make_shared<Pchip>(std::move(lambda), std::move(h))) {
    cumulative_.assign(knots_.size(), 0.0);
    QuadOptions opt;
    opt.grading = EndpointGrading::none;
    for (std::size_t k = 1; k < knots_.size(); ++k) {
      const auto piece =
          integrate_1d([this](double x) { return (*spline_)(x); }, knots_[k - 1], knots_[k], opt);
      cumulative_[k] = cumulative_[k - 1] + piece.value;
    }
  }

  double upper() const { return knots_.back(); }
  double value(double x) const { return (*spline_)(x); }
  double derivative(double x) const { return spline_->prime(x); }

  double integral(double x) const {
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    const std::size_t k = static_cast<std::size_t>(std::distance(knots_.begin(), it)) - 1;
    if (x == knots_[k]) return cumulative_[k];
    QuadOptions opt;
    opt.grading = EndpointGrading::none;
    return cumulative_[k] +
           integrate_1d([this](double t) { return (*spline_)(t); }, knots_[k], x, opt).value;
  }

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }

 private:
  using Pchip = boost::math::interpolators::pchip<std::vector<double>>;
  std::vector<double> knots_;
  std::vector<double> values_;
  std::shared_ptr<Pchip> spline_;
  std::vector<double> cumulative_;
};

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string fmt(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void require_open(const WeightSpec& spec, double lambda) {
  if (!(lambda > 0.0) || !(lambda < spec.B())) {
    throw DomainError("lambda = " + fmt(lambda) + " outside (0, " + fmt(spec.B()) + ") for " +
                      spec.descriptor());
  }
}

}  // namespace

WeightSpec::WeightSpec(WeightFamily family, double B, double C)
    : family_(std::move(family)), B_(B), C_(C) {
  if (!(B_ > 0.0)) throw DomainError("weight upper endpoint B must be positive");
  if (!std::isfinite(C_)) throw DomainError("weight offset C must be finite");
  std::visit(Overloaded{
                 [](const PowerLaw& w) {
                   if (!(w.theta > -1.0)) {
                     throw IntegrabilityError("power_law weight requires theta > -1, got " +
                                              fmt(w.theta));
                   }
                 },
                 [](const PowerLawScaled& w) {
                   if (!(w.alpha > 0.0)) {
                     throw DomainError("power_law_scaled weight requires alpha > 0, got " +
                                       fmt(w.alpha));
                   }
                 },
                 [this](const ShiftedPower& w) {
                   if (!std::isfinite(w.alpha)) throw DomainError("shifted_power alpha not finite");
                   if (B_ != 1.0) throw DomainError("shifted_power weight requires B = 1");
                 },
                 [](const ConstantWeight& w) {
                   if (!(w.value > 0.0)) throw DomainError("constant weight must be positive");
                 },
                 [this](const Tabulated& w) {
                   if (!w.table) throw DomainError("tabulated weight without table");
                   if (B_ != w.table->upper()) {
                     throw DomainError("tabulated weight B must equal the last abscissa");
                   }
                 },
             },
             family_);
}

WeightSpec WeightSpec::power_law(double theta, double C, double B) {
  return {PowerLaw{theta}, B, C};
}
WeightSpec WeightSpec::power_law_scaled(double alpha, double C, double B) {
  return {PowerLawScaled{alpha}, B, C};
}
WeightSpec WeightSpec::shifted_power(double alpha, double C) { return {ShiftedPower{alpha}, 1.0, C}; }
WeightSpec WeightSpec::constant(double value, double C, double B) {
  return {ConstantWeight{value}, B, C};
}

WeightSpec WeightSpec::tabulated(std::vector<double> lambda, std::vector<double> h, double C) {
  if (lambda.size() != h.size()) throw DomainError("tabulated weight: column lengths differ");
  if (lambda.size() < 4) throw DomainError("tabulated weight needs at least four samples");
  if (lambda.front() != 0.0) throw DomainError("tabulated weight must start at lambda = 0");
  for (std::size_t i = 1; i < lambda.size(); ++i) {
    if (!(lambda[i] > lambda[i - 1])) {
      throw DomainError("tabulated weight abscissae must be strictly increasing");
    }
  }
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!std::isfinite(h[i]) || h[i] < 0.0 || (h[i] == 0.0 && i > 0 && i + 1 < h.size())) {
      throw DomainError("tabulated weight must be positive at interior samples");
    }
  }
  const double B = lambda.back();
  auto table = std::make_shared<const TabulatedWeight>(std::move(lambda), std::move(h));
  // Dense probe of positivity between samples.
  const auto& x = table->knots();
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    for (int j = 1; j < 16; ++j) {
      const double t = x[k] + (x[k + 1] - x[k]) * j / 16.0;
      if (!(table->value(t) > 0.0)) {
        throw DomainError("tabulated weight interpolant is not positive at lambda = " + fmt(t));
      }
    }
  }
  return {Tabulated{std::move(table)}, B, C};
}

WeightSpec WeightSpec::tabulated_csv(const std::filesystem::path& path, double C) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open tabulated weight file " + path.string());
  std::vector<double> lambda, h;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double a = 0.0, b = 0.0;
    if (!(row >> a >> b)) {
      if (first) {
        first = false;
        continue;
      }
      throw DomainError("malformed row in " + path.string() + ": " + line);
    }
    first = false;
    lambda.push_back(a);
    h.push_back(b);
  }
  WeightSpec spec = tabulated(std::move(lambda), std::move(h), C);
  spec.source_ = path.string();
  return spec;
}

std::string WeightSpec::family_name() const {
  return std::visit(Overloaded{
                        [](const PowerLaw&) { return std::string("power_law"); },
                        [](const PowerLawScaled&) { return std::string("power_law_scaled"); },
                        [](const ShiftedPower&) { return std::string("shifted_power"); },
                        [](const ConstantWeight&) { return std::string("constant"); },
                        [](const Tabulated&) { return std::string("tabulated"); },
                    },
                    family_);
}

double WeightSpec::parameter() const {
  return std::visit(Overloaded{
                        [](const PowerLaw& w) { return w.theta; },
                        [](const PowerLawScaled& w) { return w.alpha; },
                        [](const ShiftedPower& w) { return w.alpha; },
                        [](const ConstantWeight& w) { return w.value; },
                        [](const Tabulated&) { return std::nan(""); },
                    },
                    family_);
}

std::string WeightSpec::descriptor() const {
  const std::string tail = "B=" + fmt(B_) + ";C=" + fmt(C_) + ")";
  return std::visit(
      Overloaded{
          [&](const PowerLaw& w) { return "power_law(theta=" + fmt(w.theta) + ";" + tail; },
          [&](const PowerLawScaled& w) {
            return "power_law_scaled(alpha=" + fmt(w.alpha) + ";" + tail;
          },
          [&](const ShiftedPower& w) { return "shifted_power(alpha=" + fmt(w.alpha) + ";" + tail; },
          [&](const ConstantWeight& w) { return "constant(value=" + fmt(w.value) + ";" + tail; },
          [&](const Tabulated& w) {
            return "tabulated(samples=" + std::to_string(w.table->knots().size()) +
                   (source_.empty() ? std::string() : ";file=" + source_) + ";" + tail;
          },
      },
      family_);
}

double eval_h(const WeightSpec& spec, double lambda) {
  require_open(spec, lambda);
  return std::visit(Overloaded{
                        [&](const PowerLaw& w) { return std::pow(lambda, w.theta); },
                        [&](const PowerLawScaled& w) {
                          return w.alpha * std::pow(lambda, w.alpha - 1.0);
                        },
                        [&](const ShiftedPower& w) { return std::pow(1.0 - lambda, w.alpha); },
                        [&](const ConstantWeight& w) { return w.value; },
                        [&](const Tabulated& w) { return w.table->value(lambda); },
                    },
                    spec.family());
}

double eval_dh(const WeightSpec& spec, double lambda) {
  require_open(spec, lambda);
  return std::visit(Overloaded{
                        [&](const PowerLaw& w) {
                          return w.theta == 0.0 ? 0.0 : w.theta * std::pow(lambda, w.theta - 1.0);
                        },
                        [&](const PowerLawScaled& w) {
                          return w.alpha == 1.0
                                     ? 0.0
                                     : w.alpha * (w.alpha - 1.0) * std::pow(lambda, w.alpha - 2.0);
                        },
                        [&](const ShiftedPower& w) {
                          return w.alpha == 0.0
                                     ? 0.0
                                     : -w.alpha * std::pow(1.0 - lambda, w.alpha - 1.0);
                        },
                        [&](const ConstantWeight&) { return 0.0; },
                        [&](const Tabulated& w) { return w.table->derivative(lambda); },
                    },
                    spec.family());
}

double eval_H(const WeightSpec& spec, double lambda) {
  if (!(lambda >= 0.0) || !(lambda < spec.B())) {
    throw DomainError("lambda = " + fmt(lambda) + " outside [0, " + fmt(spec.B()) + ") for " +
                      spec.descriptor());
  }
  if (lambda == 0.0) return -spec.C();
  const double primitive = std::visit(
      Overloaded{
          [&](const PowerLaw& w) { return std::pow(lambda, w.theta + 1.0) / (w.theta + 1.0); },
          [&](const PowerLawScaled& w) { return std::pow(lambda, w.alpha); },
          [&](const ShiftedPower& w) {
            if (w.alpha == -1.0) return -std::log1p(-lambda);
            return (1.0 - std::pow(1.0 - lambda, w.alpha + 1.0)) / (w.alpha + 1.0);
          },
          [&](const ConstantWeight& w) { return w.value * lambda; },
          [&](const Tabulated& w) { return w.table->integral(lambda); },
      },
      spec.family());
  return primitive - spec.C();
}

double eval_T(const WeightSpec& spec, double lambda) {
  require_open(spec, lambda);
  return eval_H(spec, lambda) / eval_h(spec, lambda);
}

namespace {
void require_weight_exponent(double p, double e) {
  if (!(p > 0.0)) throw DomainError("exponent p must be positive");
  if (std::abs(e - 1.0 / p) > 1e-12 && std::abs(e - 2.0 / p) > 1e-12) {
    throw DomainError("weight exponent must be 1/p or 2/p, got " + fmt(e));
  }
}
}  // namespace

double eval_G(const WeightSpec& spec, double p, double weight_exponent, double lambda) {
  require_weight_exponent(p, weight_exponent);
  require_open(spec, lambda);
  return eval_T(spec, lambda) * std::pow(eval_h(spec, lambda), weight_exponent);
}

double eval_dG(const WeightSpec& spec, double p, double weight_exponent, double lambda) {
  require_weight_exponent(p, weight_exponent);
  const double h = eval_h(spec, lambda);
  const double H = eval_H(spec, lambda);
  const double dh = eval_dh(spec, lambda);
  const double e = weight_exponent;
  return std::pow(h, e) + (e - 1.0) * H * std::pow(h, e - 2.0) * dh;
}

std::vector<double> probe_grid(double B, std::size_t nodes, double edge) {
  if (!(B > 0.0)) throw DomainError("probe grid needs B > 0");
  const std::size_t half = std::max<std::size_t>(nodes / 2, 2);
  std::vector<double> t;
  t.reserve(2 * half);
  const double lo = std::log(edge);
  const double hi = std::log(0.5);
  for (std::size_t i = 0; i < half; ++i) {
    t.push_back(std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(half - 1)));
  }
  for (std::size_t i = half - 1; i-- > 0;) t.push_back(1.0 - t[i]);
  std::vector<double> lambda;
  lambda.reserve(t.size());
  for (double ti : t) lambda.push_back(B < kInfinity ? B * ti : ti / (1.0 - ti));
  return lambda;
}

SupResult sup_ratio(const ScalarMap& numerator, const ScalarMap& denominator, double B,
                    const SupOptions& opt) {
  const auto to_lambda = [B](double t) { return B < kInfinity ? B * t : t / (1.0 - t); };
  const auto to_t = [B](double lambda) { return B < kInfinity ? lambda / B : lambda / (1.0 + lambda); };
  const auto ratio = [&](double lambda) {
    const double num = numerator(lambda);
    const double den = denominator(lambda);
    const double r = num / den;
    if (!std::isfinite(num) || !std::isfinite(den) || !std::isfinite(r)) {
      throw NonFiniteError("non-finite ratio at lambda = " + fmt(lambda));
    }
    return r;
  };

  const std::vector<double> grid = probe_grid(B, opt.nodes, opt.edge);
  std::vector<double> t;
  t.reserve(grid.size());
  for (double x : grid) t.push_back(to_t(x));

  SupResult best{-kInfinity, grid.front(), 0.0};
  std::size_t arg = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = ratio(grid[i]);
    if (r > best.value) {
      best.value = r;
      best.argmax = grid[i];
      arg = i;
    }
  }

  double lo_t = t[arg == 0 ? 0 : arg - 1];
  double hi_t = t[std::min(arg + 1, t.size() - 1)];
  for (int pass = 0; pass < opt.refinements; ++pass) {
    const double before = best.value;
    double new_lo = lo_t, new_hi = hi_t;
    const std::size_t m = std::max<std::size_t>(opt.refine_nodes, 3);
    const double step = (hi_t - lo_t) / static_cast<double>(m - 1);
    double best_t = to_t(best.argmax);
    for (std::size_t j = 0; j < m; ++j) {
      const double tj = lo_t + step * static_cast<double>(j);
      if (!(tj > 0.0 && tj < 1.0)) continue;
      const double r = ratio(to_lambda(tj));
      if (r > best.value) {
        best.value = r;
        best.argmax = to_lambda(tj);
        best_t = tj;
      }
    }
    new_lo = std::max(lo_t, best_t - step);
    new_hi = std::min(hi_t, best_t + step);
    lo_t = new_lo;
    hi_t = new_hi;
    best.refinement_delta = best.value - before;
  }
  return best;
}

GControl natural_control(const WeightSpec& spec, double p) {
  GControl g;
  g.name = "natural";
  g.G = [spec, p](double lambda) { return std::abs(eval_G(spec, p, 2.0 / p, lambda)); };
  g.dG = [spec, p](double lambda) {
    const double sign = eval_G(spec, p, 2.0 / p, lambda) < 0.0 ? -1.0 : 1.0;
    return sign * eval_dG(spec, p, 2.0 / p, lambda);
  };
  return g;
}

GControl constant_control(double value) {
  GControl g;
  g.name = "constant";
  g.G = [value](double) { return value; };
  g.dG = [](double) { return 0.0; };
  g.constant = true;
  return g;
}

const LedgerHypothesis* ConstantsLedger::first_violation(const std::string& theorem) const {
  for (const auto& h : hypotheses) {
    if (h.theorem == theorem && !h.holds) return &h;
  }
  return nullptr;
}

double c_np(int n, double p) {
  if (n < 1) throw DomainError("dimension must be positive");
  return std::pow(p - 1.0 + std::sqrt(static_cast<double>(n - 1)), 0.5 * p);
}

double goal5_constant(double p, double D) {
  if (!(D >= 0.0 && D < 1.0)) throw DomainError("A is defined only for 0 <= D < 1");
  return std::pow(2.0 * (p - 1.0) / (1.0 - D * D), 0.5 * p);
}

ConstantsLedger build_ledger(const WeightSpec& spec, double p, int n, std::optional<double> dtilde,
                             const GControl* g_control, const SupOptions& opt) {
  if (!(p > 2.0)) throw HypothesisError("p > 2", "got p = " + fmt(p));
  if (n < 2) throw HypothesisError("n >= 2", "got n = " + std::to_string(n));
  constexpr double kLarge = 1e8;

  ConstantsLedger L;
  L.p = p;
  L.n = n;
  L.c_np = c_np(n, p);
  const auto add = [&L](std::string theorem, std::string name, bool holds, std::string detail) {
    L.hypotheses.push_back({std::move(theorem), std::move(name), holds, std::move(detail)});
  };

  // goal5: Hardy-type constant D and A
  const double e5 = 1.0 / p;
  try {
    const SupResult s = sup_ratio([&](double x) { return std::abs(eval_dG(spec, p, e5, x)); },
                                  [&](double x) { return std::pow(eval_h(spec, x), e5); },
                                  spec.B(), opt);
    L.c_hcp = s.value;
    L.c_hcp_delta = s.refinement_delta;
  } catch (const NonFiniteError&) {
    L.c_hcp = kInfinity;
  }
  const double lambda0 = probe_grid(spec.B(), opt.nodes, opt.edge).front();
  L.g_at_zero = std::abs(eval_G(spec, p, e5, lambda0));

  add("goal5", "H_C(0) >= 0", spec.hc0_nonneg(), "H_C(0) = " + fmt(-spec.C()));
  add("goal5", "G_{h,C,p}(0+) = 0", L.g_at_zero <= 1e-6,
      "|G(" + fmt(lambda0) + ")| = " + fmt(L.g_at_zero));
  const bool c_finite = std::isfinite(L.c_hcp) && L.c_hcp <= kLarge;
  add("goal5", "C_{h,C,p} finite", c_finite, "C_{h,C,p} = " + fmt(L.c_hcp));
  add("goal5", "p < n", p < n, "p = " + fmt(p) + ", n = " + std::to_string(n));
  if (p < n && c_finite) {
    const double D = (p - 2.0) * (n - 1.0) * p / (n - p) * L.c_hcp;
    L.d_goal5 = D;
    add("goal5", "D < 1", D < 1.0, "D = " + fmt(D));
    if (D < 1.0) L.a_goal5 = goal5_constant(p, D);
  } else {
    add("goal5", "D < 1", false, "D undefined");
  }
  L.admissible_goal5 = L.first_violation("goal5") == nullptr;

  if (g_control == nullptr) return L;

  // goal6: control G, E, c1, c2, kappa, A_omega
  const double e6 = 2.0 / p;
  const GControl& g = *g_control;
  L.g_control = g.name;
  L.g_constant = g.constant;
  const ScalarMap controlled = [&](double x) { return std::abs(eval_G(spec, p, e6, x)); };
  bool bounded = true;
  double g_sup = 0.0;
  for (double x : probe_grid(spec.B(), opt.nodes, opt.edge)) {
    const double v = g.G(x);
    if (!std::isfinite(v) || v < 0.0) bounded = false;
    g_sup = std::max(g_sup, v);
  }
  bounded = bounded && g_sup <= kLarge;

  double c1 = 0.0, c2 = kInfinity;
  try {
    c2 = sup_ratio(controlled, g.G, spec.B(), opt).value;
    c1 = 1.0 / sup_ratio(g.G, controlled, spec.B(), opt).value;
  } catch (const NonFiniteError&) {
  }
  L.c1 = c1;
  L.c2 = c2;

  double E = 0.0;
  if (!g.constant) {
    try {
      E = sup_ratio([&](double x) { return std::abs(g.dG(x)); },
                    [&](double x) { return std::pow(eval_h(spec, x), e6); }, spec.B(), opt)
              .value;
    } catch (const NonFiniteError&) {
      E = kInfinity;
    }
  }
  L.e_goal6 = E;

  add("goal6", "h in C^1((0,B))", true, spec.family_name() + " weights are C^1 on (0,B)");
  add("goal6", "H_C(0) >= 0", spec.hc0_nonneg(), "H_C(0) = " + fmt(-spec.C()));
  add("goal6", "G bounded and non-negative", bounded, "sup G = " + fmt(g_sup));
  add("goal6", "c1 > 0 and c2 < inf", c1 > 0.0 && std::isfinite(c2) && c2 <= kLarge,
      "c1 = " + fmt(c1) + ", c2 = " + fmt(c2));
  add("goal6", "E finite", std::isfinite(E) && E <= kLarge, "E = " + fmt(E));
  add("goal6", "dtilde supplied", dtilde.has_value(),
      dtilde ? "dtilde = " + fmt(*dtilde) : std::string("no dtilde"));
  if (dtilde) {
    L.dtilde = *dtilde;
    const double kappa = (p - 2.0) * c2 * *dtilde * E;
    L.kappa = kappa;
    add("goal6", "kappa < 1", kappa < 1.0, "kappa = " + fmt(kappa));
    if (kappa < 1.0 && c1 > 0.0) {
      L.a_omega = ((p - 2.0) * c2 / c1 * *dtilde * E + (p - 1.0)) / (1.0 - kappa);
    }
  } else {
    add("goal6", "kappa < 1", false, "kappa undefined without dtilde");
  }
  L.admissible_goal6 = L.first_violation("goal6") == nullptr;
  return L;
}

}  // namespace gnlab
