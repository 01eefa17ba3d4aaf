#include <gnlab/mems.hpp>

#include <gnlab/seminorm.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gnlab {

namespace {

std::string fmt(double x) {
  if (x == 0.0) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

struct Grid {
  std::vector<double> s;
  double h = 0.0;
};

Grid make_grid(const MemsConfig& cfg) {
  Grid g;
  g.s.resize(cfg.grid_size);
  g.h = cfg.ball_radius / static_cast<double>(cfg.grid_size - 1);
  for (std::size_t i = 0; i < cfg.grid_size; ++i) g.s[i] = g.h * static_cast<double>(i);
  g.s.back() = cfg.ball_radius;
  return g;
}

// Residual over the unknowns w_0..w_{N-2}; w_{N-1} = 0.
void residual(const MemsConfig& cfg, const Grid& g, const std::vector<double>& load,
              const std::vector<double>& w, std::vector<double>& F) {
  const std::size_t m = w.size();
  const double h2 = g.h * g.h;
  const double n1 = cfg.n - 1.0;
  F.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double right = i + 1 < m ? w[i + 1] : 0.0;
    const double source = load[i] / ((1.0 - w[i]) * (1.0 - w[i]));
    if (i == 0) {
      F[0] = 2.0 * cfg.n * (right - w[0]) / h2 - source;
    } else {
      F[i] = (right - 2.0 * w[i] + w[i - 1]) / h2 + n1 * (right - w[i - 1]) / (2.0 * g.h * g.s[i]) -
             source;
    }
  }
}

double max_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Solves J δ = -F for the tridiagonal Jacobian at w.
std::vector<double> newton_step(const MemsConfig& cfg, const Grid& g,
                                const std::vector<double>& load, const std::vector<double>& w,
                                const std::vector<double>& F) {
  const std::size_t m = w.size();
  const double h2 = g.h * g.h;
  const double n1 = cfg.n - 1.0;
  std::vector<double> lo(m, 0.0), di(m, 0.0), up(m, 0.0), rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double dsource = 2.0 * load[i] / std::pow(1.0 - w[i], 3);
    if (i == 0) {
      di[0] = -2.0 * cfg.n / h2 - dsource;
      up[0] = 2.0 * cfg.n / h2;
    } else {
      const double adv = n1 / (2.0 * g.h * g.s[i]);
      lo[i] = 1.0 / h2 - adv;
      di[i] = -2.0 / h2 - dsource;
      up[i] = 1.0 / h2 + adv;
    }
    rhs[i] = -F[i];
  }
  for (std::size_t i = 1; i < m; ++i) {
    const double k = lo[i] / di[i - 1];
    di[i] -= k * up[i - 1];
    rhs[i] -= k * rhs[i - 1];
  }
  std::vector<double> d(m);
  d[m - 1] = rhs[m - 1] / di[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) d[i] = (rhs[i] - up[i] * d[i + 1]) / di[i];
  return d;
}

struct NewtonOutcome {
  bool converged = false;
  double residual = 0.0;
  int iterations = 0;
};

NewtonOutcome newton(const MemsConfig& cfg, const Grid& g, double r, std::vector<double>& w) {
  std::vector<double> load(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) load[i] = r * cfg.f(g.s[i]);
  std::vector<double> F, Ftrial, trial(w.size());
  residual(cfg, g, load, w, F);
  NewtonOutcome out;
  out.residual = max_norm(F);
  for (int it = 0; it < cfg.max_newton_iterations; ++it) {
    if (out.residual <= cfg.newton_tol) {
      out.converged = true;
      out.iterations = it;
      return out;
    }
    const std::vector<double> d = newton_step(cfg, g, load, w, F);
    bool accepted = false;
    for (double lambda = 1.0; lambda >= 1.0 / 1048576.0; lambda *= 0.5) {
      bool in_range = true;
      for (std::size_t i = 0; i < w.size(); ++i) {
        trial[i] = w[i] + lambda * d[i];
        if (!(trial[i] < 1.0)) in_range = false;
      }
      if (!in_range) continue;
      residual(cfg, g, load, trial, Ftrial);
      const double res = max_norm(Ftrial);
      if (std::isfinite(res) && (res < out.residual || res <= cfg.newton_tol)) {
        w.swap(trial);
        F.swap(Ftrial);
        out.residual = res;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      out.iterations = it + 1;
      return out;
    }
  }
  out.converged = out.residual <= cfg.newton_tol;
  out.iterations = cfg.max_newton_iterations;
  return out;
}

nlohmann::json config_json(const MemsConfig& cfg) {
  return {{"n", cfg.n},
          {"ball_radius", cfg.ball_radius},
          {"r_param", cfg.r_param},
          {"f", {{"a", cfg.f.a}, {"b", cfg.f.b}}},
          {"q", cfg.q},
          {"grid_size", cfg.grid_size},
          {"newton_tol", cfg.newton_tol},
          {"continuation_steps", cfg.continuation_steps},
          {"max_newton_iterations", cfg.max_newton_iterations}};
}

}  // namespace

std::string LoadProfile::descriptor() const {
  return "linear_load(a=" + fmt(a) + ";b=" + fmt(b) + ")";
}

void MemsConfig::validate() const {
  if (n < 2) throw DomainError("mems.n must be >= 2");
  if (!(ball_radius > 0.0) || !std::isfinite(ball_radius)) {
    throw DomainError("mems.ball_radius must be positive");
  }
  if (!(r_param >= 0.0) || !std::isfinite(r_param)) throw DomainError("mems.r must be >= 0");
  if (!(q > 1.0)) throw DomainError("mems.q must be > 1");
  if (grid_size < 64) throw DomainError("mems.grid_size must be >= 64");
  if (!(newton_tol > 0.0)) throw DomainError("mems.newton_tol must be positive");
  if (continuation_steps < 1) throw DomainError("mems.continuation_steps must be >= 1");
  if (max_newton_iterations < 1) throw DomainError("mems.max_newton_iterations must be >= 1");
  if (!std::isfinite(f.a) || !std::isfinite(f.b)) throw DomainError("mems.f must be finite");
}

double mems_residual(const MemsConfig& cfg, double r, const std::vector<double>& w) {
  const Grid g = make_grid(cfg);
  if (w.size() + 1 != g.s.size() && w.size() != g.s.size()) {
    throw DomainError("mems_residual: profile length does not match the grid");
  }
  std::vector<double> inner(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(g.s.size() - 1));
  std::vector<double> load(inner.size()), F;
  for (std::size_t i = 0; i < inner.size(); ++i) load[i] = r * cfg.f(g.s[i]);
  residual(cfg, g, load, inner, F);
  return max_norm(F);
}

MemsSolution solve_mems(const MemsConfig& cfg) {
  cfg.validate();
  const Grid g = make_grid(cfg);
  std::vector<double> w(g.s.size() - 1, 0.0);
  MemsSolution sol;
  sol.grid = g.s;
  sol.path.push_back({0.0, 0.0, 0});

  double r = 0.0;
  double dr = cfg.r_param / cfg.continuation_steps;
  double residual_norm = 0.0;
  const double min_dr = cfg.r_param * 1e-6;
  while (r < cfg.r_param) {
    double r_try = std::min(r + dr, cfg.r_param);
    if (cfg.r_param - r_try <= 1e-12 * cfg.r_param) r_try = cfg.r_param;
    std::vector<double> trial = w;
    const NewtonOutcome res = newton(cfg, g, r_try, trial);
    if (res.converged) {
      w.swap(trial);
      r = r_try;
      residual_norm = res.residual;
      sol.path.push_back({r, *std::max_element(w.begin(), w.end()), res.iterations});
      continue;
    }
    dr *= 0.5;
    if (dr < min_dr) {
      throw PullInError(r, "continuation stalled beyond r = " + fmt(r) +
                               " (empirical pull-in lower bound)");
    }
  }
  if (cfg.r_param == 0.0) residual_norm = mems_residual(cfg, 0.0, std::vector<double>(g.s.size(), 0.0));

  sol.w = w;
  sol.w.push_back(0.0);
  for (double x : sol.w) {
    if (!(x < 1.0)) throw RangeError("solver iterate reached w >= 1");
  }
  sol.residual_norm = residual_norm;
  sol.converged = residual_norm <= cfg.newton_tol;
  sol.max_u = *std::max_element(sol.w.begin(), sol.w.end());
  sol.r_reached = r;
  return sol;
}

RadialField solution_field(const MemsSolution& sol, const MemsConfig& cfg) {
  const std::size_t N = sol.grid.size();
  if (N < 4 || sol.w.size() != N) throw DomainError("solution_field: malformed solution");
  std::vector<double> x(2 * N - 1), y(2 * N - 1);
  for (std::size_t i = 0; i < N; ++i) {
    x[N - 1 - i] = -sol.grid[i];
    y[N - 1 - i] = sol.w[i];
    x[N - 1 + i] = sol.grid[i];
    y[N - 1 + i] = sol.w[i];
  }
  auto spline = std::make_shared<const CubicSpline>(std::move(x), std::move(y));
  const bool positive = sol.max_u > 0.0;
  return profiles::spline_field(spline, cfg.n, cfg.ball_radius, 1.0,
                                "mems_solution(n=" + std::to_string(cfg.n) + ";r=" +
                                    fmt(cfg.r_param) + ";f=" + cfg.f.descriptor() +
                                    ";grid=" + std::to_string(N) + ")",
                                true, positive);
}

InequalityReport verify_mems_bound(const MemsSolution& sol, const MemsConfig& cfg,
                                   const CheckOptions& opt) {
  if (!sol.converged) throw HypothesisError("converged solution", "solver did not converge");
  const double q = cfg.q;
  const double p = 2.0 * q;
  if (!(p > 2.0)) throw HypothesisError("p > 2", "p = " + fmt(p));
  const RadialField field = solution_field(sol, cfg);
  const auto [lo, hi] = field.range();
  if (!(lo > 0.0 && hi < 1.0)) {
    throw HypothesisError("0 < u < 1", "solution range [" + fmt(lo) + ", " + fmt(hi) + "]");
  }
  const WeightSpec h = WeightSpec::shifted_power(-q, 1.0 / (1.0 - q));
  const GControl g = constant_control(1.0 / (q - 1.0));
  const ConstantsLedger ledger = build_ledger(h, p, cfg.n, 1.0, &g);
  const InequalityReport inner = check_goal6(field, ledger, h, false, opt);

  InequalityReport r;
  r.theorem_id = TheoremId::goal6;
  r.n = cfg.n;
  r.p = p;
  r.weight = h.descriptor();
  r.field = field.descriptor();
  r.hypotheses = inner.hypotheses;
  r.constant = p - 1.0;
  r.exponent = 1.0 / q;
  r.lhs = inner.lhs;
  const QuadResult fq = integrate_radial(
      [&](double s) { return std::pow(std::abs(cfg.f(s)), q); }, field.measure(), opt.quad);
  r.rhs_terms.push_back({"f_q", fq, (p - 1.0) * cfg.r_param});
  finalize(r);

  const QuadResult weighted_f = integrate_radial(
      [&](double s) { return std::pow(std::abs(cfg.f(s)), q) * std::pow(1.0 - field.value(s), -2.0 * q); },
      field.measure(), opt.quad, field.breakpoints());
  const double rigorous = (p - 1.0) / (q - 1.0) * cfg.r_param * std::pow(weighted_f.value, 1.0 / q);
  r.notes.push_back("general weighted bound I <= A_Omega J with A_Omega = " + fmt(inner.constant) +
                    ": ratio " + fmt(inner.ratio) + ", verdict " + to_string(inner.verdict));
  r.notes.push_back("bound including the factor (1-u)^{-2q} and 1/(q-1): " + fmt(rigorous) +
                    (r.lhs_compared <= rigorous ? " (satisfied)" : " (violated)"));
  r.notes.push_back("dtilde does not enter: E = 0 for the constant control");
  r.config_echo = {{"theorem", "goal6"},
                   {"check", "mems_bound"},
                   {"mems", config_json(cfg)},
                   {"residual_norm", sol.residual_norm},
                   {"max_u", sol.max_u},
                   {"weight", h.descriptor()},
                   {"rigorous_bound", rigorous},
                   {"goal6_ratio", inner.ratio},
                   {"goal6_verdict", to_string(inner.verdict)}};
  if (inner.verdict == Verdict::fails) r.verdict = Verdict::fails;
  return r;
}

CompositionReport verify_composition(const MemsSolution& sol, const MemsConfig& cfg,
                                     const CheckOptions& opt) {
  if (!sol.converged) throw HypothesisError("converged solution", "solver did not converge");
  CompositionReport rep;
  const double p = 2.0 * cfg.q;
  rep.p = p;
  if (sol.max_u == 0.0) return rep;

  const RadialField field = solution_field(sol, cfg);
  const JetMap Wtilde = [](const Jet2& x) { return 1.0 - sqrt(1.0 - x); };
  const RadialField composed = compose(field, Wtilde, "one_minus_sqrt_one_minus");
  const QuadResult left = operator_power_integral(composed, Operator::grad, p, opt.quad);
  const WeightSpec h = WeightSpec::shifted_power(-0.5 * p, 0.0);
  const QuadResult right = weighted_seminorm(field, Integrand::grad_p_h, p, h, opt.quad);
  rep.lhs = 4.0 * std::pow(left.value, 2.0 / p);
  rep.rhs = std::pow(right.value, 2.0 / p);
  rep.seminorm = std::pow(left.value, 1.0 / p);
  const double scale = std::max(std::abs(rep.lhs), std::abs(rep.rhs));
  rep.relative_difference = scale == 0.0 ? 0.0 : std::abs(rep.lhs - rep.rhs) / scale;

  const ScalarMap W = [](double x) { return 0.5 / std::sqrt(1.0 - x); };
  const ScalarMap dW = [](double x) { return 0.25 / std::pow(1.0 - x, 1.5); };
  for (double s : field.probe_radii(100)) {
    rep.max_pointwise_residual =
        std::max(rep.max_pointwise_residual, composition_residuals(field, composed, W, dW, s).max());
  }
  return rep;
}

RecipeResult recipe_check(double tau_exponent, double q, double lambda_max, int n) {
  if (!std::isfinite(tau_exponent)) {
    throw UnsupportedError("recipe_check supports tau(lambda) = (1-lambda)^k with finite k");
  }
  if (!(q > 1.0)) throw DomainError("recipe_check needs q > 1");
  if (!(lambda_max > 0.0 && lambda_max < 1.0)) throw DomainError("lambda_max must lie in (0,1)");
  RecipeResult res;
  res.tau_exponent = tau_exponent;
  res.q = q;
  res.alpha = -q;
  res.C = 1.0 / (1.0 + res.alpha);
  res.weight = WeightSpec::shifted_power(res.alpha, res.C);
  res.lambda_max = lambda_max;
  res.g_value = 1.0 / (q - 1.0);
  res.product_value = std::pow(q - 1.0, -q);

  for (double x : probe_grid(1.0, 4096)) {
    const double G = std::abs(eval_G(res.weight, 2.0 * q, 1.0 / q, x));
    res.g_max_deviation = std::max(res.g_max_deviation, std::abs(G - res.g_value) / res.g_value);
    const double prod = std::pow(std::abs(eval_H(res.weight, x)), q) *
                        std::pow(eval_h(res.weight, x), 1.0 - q);
    res.product_max_deviation =
        std::max(res.product_max_deviation, std::abs(prod - res.product_value) / res.product_value);
  }
  // |τ|^{-q} = (1-λ)^{-kq}; its minimum over [0, λmax] sits at an endpoint.
  const double e = -tau_exponent * q;
  const double tau_min = std::min(1.0, std::pow(1.0 - lambda_max, e));
  res.c_best = tau_min / res.product_value;
  res.holds_globally = e <= 0.0;

  const GControl g = constant_control(res.g_value);
  res.ledger = build_ledger(res.weight, 2.0 * q, n, 1.0, &g);
  return res;
}

std::filesystem::path save_solution(const MemsSolution& sol, const MemsConfig& cfg,
                                    const std::filesystem::path& csv_path) {
  const RadialField field = solution_field(sol, cfg);
  {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw DomainError("cannot write " + csv_path.string());
    out << "s,w,w_prime,w_double_prime\n";
    char buf[128];
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
      const Jet2 j = field.jet(sol.grid[i]);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", sol.grid[i], sol.w[i], j.d1, j.d2);
      out << buf;
    }
  }
  nlohmann::json side = {{"schema", "gnlab.mems_solution/1"},
                         {"config", config_json(cfg)},
                         {"residual_norm", sol.residual_norm},
                         {"converged", sol.converged},
                         {"max_u", sol.max_u},
                         {"r_reached", sol.r_reached}};
  for (const auto& pt : sol.path) {
    side["path"].push_back({{"r", pt.r}, {"max_u", pt.max_u}, {"newton_iterations", pt.newton_iterations}});
  }
  std::filesystem::path json_path = csv_path;
  json_path.replace_extension(".json");
  std::ofstream js(json_path, std::ios::binary);
  if (!js) throw DomainError("cannot write " + json_path.string());
  js << side.dump(2) << "\n";
  return csv_path;
}

LoadedSolution load_solution(const std::filesystem::path& csv_path) {
  std::filesystem::path json_path = csv_path;
  json_path.replace_extension(".json");
  std::ifstream js(json_path);
  if (!js) throw DomainError("missing solution sidecar " + json_path.string());
  const nlohmann::json side = nlohmann::json::parse(js);
  if (side.value("schema", "") != "gnlab.mems_solution/1") {
    throw DomainError("unsupported solution sidecar schema in " + json_path.string());
  }
  LoadedSolution out;
  const auto& c = side.at("config");
  out.config.n = c.at("n").get<int>();
  out.config.ball_radius = c.at("ball_radius").get<double>();
  out.config.r_param = c.at("r_param").get<double>();
  out.config.f.a = c.at("f").at("a").get<double>();
  out.config.f.b = c.at("f").at("b").get<double>();
  out.config.q = c.at("q").get<double>();
  out.config.grid_size = c.at("grid_size").get<std::size_t>();
  out.config.newton_tol = c.at("newton_tol").get<double>();
  out.config.continuation_steps = c.at("continuation_steps").get<int>();
  out.config.max_newton_iterations = c.value("max_newton_iterations", 50);
  out.solution.residual_norm = side.at("residual_norm").get<double>();
  out.solution.converged = side.at("converged").get<bool>();
  out.solution.max_u = side.at("max_u").get<double>();
  out.solution.r_reached = side.value("r_reached", out.config.r_param);
  if (side.contains("path")) {
    for (const auto& pt : side.at("path")) {
      out.solution.path.push_back({pt.at("r").get<double>(), pt.at("max_u").get<double>(),
                                   pt.at("newton_iterations").get<int>()});
    }
  }

  std::ifstream in(csv_path);
  if (!in) throw DomainError("cannot open solution file " + csv_path.string());
  std::string line;
  std::getline(in, line);
  if (line.rfind("s,w", 0) != 0) throw DomainError("solution file lacks the s,w header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double s = 0.0, w = 0.0;
    if (!(row >> s >> w)) throw DomainError("malformed row in " + csv_path.string());
    out.solution.grid.push_back(s);
    out.solution.w.push_back(w);
  }
  if (out.solution.grid.size() != out.config.grid_size) {
    throw DomainError("solution file row count does not match grid_size");
  }
  return out;
}

}  // namespace gnlab
