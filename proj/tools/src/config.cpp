#include <gnlab/cli/config.hpp>

#include <gnlab/errors.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <string_view>

namespace gnlab::cli {

namespace {

using nlohmann::json;

std::string format(double x) {
  if (x == 0.0) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

/// Checked view of a JSON object.
class Obj {
 public:
  Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  void allow(std::initializer_list<std::string_view> keys) const {
    for (const auto& [k, v] : j_.items()) {
      bool known = false;
      for (auto a : keys) known = known || k == a;
      if (!known) throw ConfigError(join(path_, k), "unknown key");
    }
  }

  bool has(const std::string& k) const { return j_.contains(k); }
  const json& at(const std::string& k) const {
    if (!has(k)) throw ConfigError(join(path_, k), "required key missing");
    return j_.at(k);
  }
  std::string sub(const std::string& k) const { return join(path_, k); }
  const std::string& path() const { return path_; }

  double number(const std::string& k) const { return as_number(at(k), sub(k)); }
  double number(const std::string& k, double def) const { return has(k) ? number(k) : def; }

  int integer(const std::string& k) const {
    const double x = number(k);
    if (x != std::floor(x) || std::fabs(x) > 1e9) throw ConfigError(sub(k), "expected an integer");
    return static_cast<int>(x);
  }
  int integer(const std::string& k, int def) const { return has(k) ? integer(k) : def; }

  std::string text(const std::string& k) const {
    const json& v = at(k);
    if (!v.is_string()) throw ConfigError(sub(k), "expected a string");
    return v.get<std::string>();
  }
  std::string text(const std::string& k, const std::string& def) const {
    return has(k) ? text(k) : def;
  }

  bool boolean(const std::string& k, bool def) const {
    if (!has(k)) return def;
    const json& v = at(k);
    if (!v.is_boolean()) throw ConfigError(sub(k), "expected true or false");
    return v.get<bool>();
  }

  static double as_number(const json& v, const std::string& path) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
      const auto s = v.get<std::string>();
      if (s == "inf") return kInfinity;
      if (s == "-inf") return -kInfinity;
    }
    throw ConfigError(path, "expected a number");
  }

 private:
  const json& j_;
  std::string path_;
};

std::vector<double> number_list(const json& v, const std::string& path) {
  std::vector<double> out;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(Obj::as_number(v[i], index(path, i)));
  } else if (v.is_object()) {
    // {"from": a, "to": b, "count": m}: m equispaced values including both ends
    Obj o(v, path);
    o.allow({"from", "to", "count"});
    const double a = o.number("from");
    const double b = o.number("to");
    const int m = o.integer("count");
    if (m < 1) throw ConfigError(o.sub("count"), "must be >= 1");
    if (m == 1) return {a};
    for (int i = 0; i < m; ++i) out.push_back(a + (b - a) * i / (m - 1));
  } else {
    out.push_back(Obj::as_number(v, path));
  }
  if (out.empty()) throw ConfigError(path, "empty list");
  return out;
}

std::vector<int> int_list(const json& v, const std::string& path) {
  std::vector<int> out;
  for (double x : number_list(v, path)) {
    if (x != std::floor(x)) throw ConfigError(path, "expected integers");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

template <class F>
void each(const json& v, const std::string& path, F&& f) {
  if (!v.is_array()) throw ConfigError(path, "expected an array");
  for (std::size_t i = 0; i < v.size(); ++i) f(v[i], index(path, i));
}

std::filesystem::path resolve(const std::string& p, const std::filesystem::path& base) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) path = base / path;
  return path;
}

void require_dimension(int n, const std::string& path) {
  if (n < 2) throw ConfigError(path, "dimension n must be >= 2");
}

/// Exponent constraints of each theorem, checked before any computation.
void validate_exponents(const CheckSpec& c, const std::string& path) {
  const std::string pp = join(path, "p");
  switch (c.theorem) {
    case TheoremId::main2:
    case TheoremId::goal3:
      if (!(c.p >= 2.0)) throw ConfigError(pp, to_string(c.theorem) + " needs p >= 2");
      break;
    case TheoremId::goal4:
    case TheoremId::goal6:
      if (!(c.p > 2.0)) throw ConfigError(pp, to_string(c.theorem) + " needs p > 2");
      break;
    case TheoremId::goal5:
      if (!(c.p > 2.0)) throw ConfigError(pp, "goal5 needs p > 2");
      if (!(c.p < c.n)) throw ConfigError(pp, "goal5 needs p < n");
      break;
    case TheoremId::classical_gn: {
      if (!(c.p >= 1.0)) throw ConfigError(pp, "classical_gn needs p >= 1");
      if (!(c.q >= 1.0)) throw ConfigError(join(path, "q"), "classical_gn needs q >= 1");
      if (!(c.r >= 1.0)) throw ConfigError(join(path, "r"), "classical_gn needs r >= 1");
      if (std::fabs(2.0 / c.q - 1.0 / c.r - 1.0 / c.p) > 1e-12) {
        throw ConfigError(join(path, "q"), "classical_gn needs 2/q = 1/r + 1/p");
      }
      break;
    }
    default:
      throw ConfigError(join(path, "theorem"),
                        to_string(c.theorem) + " is run by its own command, not as a check");
  }
}

ProfileSpec parse_field(const json& j, const std::string& path, const std::filesystem::path& base) {
  Obj o(j, path);
  o.allow({"profile", "amplitude", "k", "radius", "solution"});
  ProfileSpec s;
  if (o.has("solution")) {
    if (o.has("profile")) throw ConfigError(o.sub("solution"), "give either profile or solution");
    s.kind = "solution";
    s.path = resolve(o.text("solution"), base).string();
    if (!std::filesystem::exists(s.path)) throw ConfigError(o.sub("solution"), "file not found: " + s.path);
    return s;
  }
  s.kind = o.text("profile");
  if (s.kind != "paraboloid" && s.kind != "paraboloid_power" && s.kind != "cosine_bump" &&
      s.kind != "harmonic_annulus") {
    throw ConfigError(o.sub("profile"), "unknown profile '" + s.kind + "'");
  }
  s.amplitude = o.number("amplitude", 1.0);
  s.k = o.number("k", 2.0);
  s.radius = o.number("radius", s.kind == "harmonic_annulus" ? 10.0 : 1.0);
  return s;
}

CheckSpec parse_check(const json& j, const std::string& path, const std::filesystem::path& base,
                      const std::string& default_id) {
  Obj o(j, path);
  o.allow({"id", "theorem", "p", "n", "weight", "field", "dtilde", "control", "q", "r"});
  CheckSpec c;
  c.id = o.text("id", default_id);
  try {
    c.theorem = theorem_from_string(o.text("theorem"));
  } catch (const DomainError& e) {
    throw ConfigError(o.sub("theorem"), e.what());
  }
  c.p = o.number("p");
  c.n = o.integer("n");
  require_dimension(c.n, o.sub("n"));
  if (c.theorem == TheoremId::classical_gn) {
    c.q = o.number("q");
    c.r = o.number("r");
    if (o.has("weight")) throw ConfigError(o.sub("weight"), "classical_gn takes no weight");
  } else {
    if (o.has("q")) throw ConfigError(o.sub("q"), "only used by classical_gn");
    if (o.has("r")) throw ConfigError(o.sub("r"), "only used by classical_gn");
    c.weight = parse_weight(o.at("weight"), o.sub("weight"), base);
  }
  c.profile = parse_field(o.at("field"), o.sub("field"), base);
  if (c.theorem != TheoremId::goal6) {
    if (o.has("dtilde")) throw ConfigError(o.sub("dtilde"), "only used by goal6");
    if (o.has("control")) throw ConfigError(o.sub("control"), "only used by goal6");
  } else {
    if (o.has("dtilde") && !(o.at("dtilde").is_string() && o.at("dtilde") == "auto")) {
      c.dtilde = o.number("dtilde");
      if (!(*c.dtilde > 0.0)) throw ConfigError(o.sub("dtilde"), "must be positive");
      c.dtilde_supplied = true;
    }
    if (o.has("control")) {
      const json& v = o.at("control");
      if (v.is_string() && v == "natural") {
        c.control = "natural";
      } else if (v.is_number()) {
        c.control = "constant";
        c.control_value = v.get<double>();
        if (!(c.control_value > 0.0)) throw ConfigError(o.sub("control"), "constant must be positive");
      } else {
        throw ConfigError(o.sub("control"), "expected \"natural\" or a positive constant");
      }
    }
  }
  validate_exponents(c, path);
  try {
    (void)c.profile.build(c.n);
  } catch (const Error& e) {
    throw ConfigError(o.sub("field"), e.what());
  }
  return c;
}

void parse_grid(const json& j, const std::string& path, const std::filesystem::path& base,
                std::vector<CheckSpec>& out) {
  Obj o(j, path);
  o.allow({"theorems", "p", "n", "weights", "fields", "dtilde", "control", "id_prefix"});
  std::vector<std::string> theorems;
  each(o.at("theorems"), o.sub("theorems"), [&](const json& v, const std::string& p) {
    if (!v.is_string()) throw ConfigError(p, "expected a theorem name");
    theorems.push_back(v.get<std::string>());
  });
  const auto ps = number_list(o.at("p"), o.sub("p"));
  const auto ns = int_list(o.at("n"), o.sub("n"));
  std::vector<const json*> weights;
  std::vector<std::string> weight_paths;
  each(o.at("weights"), o.sub("weights"), [&](const json& v, const std::string& p) {
    weights.push_back(&v);
    weight_paths.push_back(p);
  });
  std::vector<const json*> fields;
  std::vector<std::string> field_paths;
  each(o.at("fields"), o.sub("fields"), [&](const json& v, const std::string& p) {
    fields.push_back(&v);
    field_paths.push_back(p);
  });
  const std::string prefix = o.text("id_prefix", "g");
  std::size_t counter = 0;
  for (std::size_t ti = 0; ti < theorems.size(); ++ti) {
    for (double p : ps) {
      for (int n : ns) {
        for (std::size_t wi = 0; wi < weights.size(); ++wi) {
          for (std::size_t fi = 0; fi < fields.size(); ++fi) {
            json c = {{"theorem", theorems[ti]}, {"p", p}, {"n", n}, {"field", *fields[fi]}};
            if (theorems[ti] != "classical_gn") c["weight"] = *weights[wi];
            if (theorems[ti] == "goal6") {
              if (o.has("dtilde")) c["dtilde"] = o.at("dtilde");
              if (o.has("control")) c["control"] = o.at("control");
            }
            char id[64];
            std::snprintf(id, sizeof id, "%s%04zu", prefix.c_str(), counter++);
            try {
              out.push_back(parse_check(c, path, base, id));
            } catch (const ConfigError& e) {
              // name the grid entry the failing combination came from
              const std::string& f = e.field();
              std::string where = path;
              if (f.find(".weight") != std::string::npos) where = weight_paths[wi];
              else if (f.find(".field") != std::string::npos) where = field_paths[fi];
              else if (f.find(".theorem") != std::string::npos) where = index(o.sub("theorems"), ti);
              else if (f.find(".p") != std::string::npos) where = o.sub("p");
              else if (f.find(".n") != std::string::npos) where = o.sub("n");
              throw ConfigError(where, std::string(e.what()).substr(f.size() + 2) + " (theorem " +
                                           theorems[ti] + ", p = " + format(p) + ", n = " +
                                           std::to_string(n) + ")");
            }
          }
        }
      }
    }
  }
}

CheckOptions parse_quadrature(const json& j, const std::string& path) {
  Obj o(j, path);
  o.allow({"rel_tol", "abs_tol", "max_panels"});
  CheckOptions opt;
  opt.quad.rel_tol = o.number("rel_tol", opt.quad.rel_tol);
  opt.quad.abs_tol = o.number("abs_tol", opt.quad.abs_tol);
  const int panels = o.integer("max_panels", static_cast<int>(opt.quad.max_panels));
  if (!(opt.quad.rel_tol > 0.0)) throw ConfigError(o.sub("rel_tol"), "must be positive");
  if (!(opt.quad.abs_tol >= 0.0)) throw ConfigError(o.sub("abs_tol"), "must be >= 0");
  if (panels < 1) throw ConfigError(o.sub("max_panels"), "must be >= 1");
  opt.quad.max_panels = static_cast<std::size_t>(panels);
  return opt;
}

LedgerEntry parse_ledger_entry(const json& j, const std::string& path,
                               const std::filesystem::path& base) {
  Obj o(j, path);
  o.allow({"weight", "p", "n", "dtilde", "control"});
  LedgerEntry e;
  e.weight = parse_weight(o.at("weight"), o.sub("weight"), base);
  e.p = o.number("p");
  if (!(e.p > 2.0)) throw ConfigError(o.sub("p"), "the ledger needs p > 2");
  e.n = o.integer("n");
  require_dimension(e.n, o.sub("n"));
  if (o.has("dtilde")) {
    e.dtilde = o.number("dtilde");
    if (!(*e.dtilde > 0.0)) throw ConfigError(o.sub("dtilde"), "must be positive");
  }
  if (o.has("control")) {
    const json& v = o.at("control");
    if (v.is_string() && v == "natural") {
      e.control = "natural";
    } else if (v.is_number() && v.get<double>() > 0.0) {
      e.control = "constant";
      e.control_value = v.get<double>();
    } else {
      throw ConfigError(o.sub("control"), "expected \"natural\" or a positive constant");
    }
  }
  return e;
}

FrontierSpec parse_frontier(const json& j, const std::string& path,
                            const std::filesystem::path& base) {
  Obj o(j, path);
  o.allow({"weight", "parameter", "values", "p", "n"});
  FrontierSpec f;
  f.weight = o.at("weight");
  if (!f.weight.is_object()) throw ConfigError(o.sub("weight"), "expected an object");
  f.parameter = o.text("parameter");
  if (f.parameter == "family") throw ConfigError(o.sub("parameter"), "cannot sweep the family");
  f.values = number_list(o.at("values"), o.sub("values"));
  f.ps = number_list(o.at("p"), o.sub("p"));
  f.ns = int_list(o.at("n"), o.sub("n"));
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    json w = f.weight;
    w[f.parameter] = f.values[i];
    (void)parse_weight(w, index(o.sub("values"), i), base);
  }
  for (std::size_t i = 0; i < f.ps.size(); ++i) {
    if (!(f.ps[i] > 2.0)) throw ConfigError(index(o.sub("p"), i), "the ledger needs p > 2");
  }
  for (std::size_t i = 0; i < f.ns.size(); ++i) require_dimension(f.ns[i], index(o.sub("n"), i));
  return f;
}

HardySpec parse_hardy(const json& j, const std::string& path) {
  Obj o(j, path);
  o.allow({"p", "alpha", "epsilons", "profiles"});
  HardySpec h;
  h.p = o.number("p");
  h.alpha = o.number("alpha", 0.0);
  if (!(h.p > 1.0)) throw ConfigError(o.sub("p"), "must be > 1");
  if (h.alpha == h.p - 1.0) throw ConfigError(o.sub("alpha"), "alpha = p - 1 has no Hardy constant");
  if (o.has("epsilons")) {
    h.epsilons = number_list(o.at("epsilons"), o.sub("epsilons"));
    if (!(h.alpha < h.p - 1.0)) {
      throw ConfigError(o.sub("alpha"), "the sharpness probe needs alpha < p - 1");
    }
    for (std::size_t i = 0; i < h.epsilons.size(); ++i) {
      if (!(h.epsilons[i] > 0.0)) throw ConfigError(index(o.sub("epsilons"), i), "must be positive");
      if (i > 0 && !(h.epsilons[i] < h.epsilons[i - 1])) {
        throw ConfigError(index(o.sub("epsilons"), i), "epsilons must be strictly decreasing");
      }
    }
  }
  if (o.has("profiles")) {
    each(o.at("profiles"), o.sub("profiles"), [&](const json& v, const std::string& p) {
      Obj q(v, p);
      q.allow({"kind", "beta", "t0", "t1", "gamma"});
      HardyProfileSpec s;
      s.kind = q.text("kind");
      s.beta = q.number("beta");
      if (s.kind == "cutoff_power") {
        s.t0 = q.number("t0", 1.0);
        s.t1 = q.number("t1", 2.0);
        if (!(s.t0 > 0.0 && s.t1 > s.t0)) throw ConfigError(q.sub("t1"), "needs 0 < t0 < t1");
        if (q.has("gamma")) throw ConfigError(q.sub("gamma"), "only used by power_with_decaying_tail");
      } else if (s.kind == "power_with_decaying_tail") {
        s.gamma = q.number("gamma");
        if (!(s.gamma > 0.0)) throw ConfigError(q.sub("gamma"), "must be positive");
        if (q.has("t0") || q.has("t1")) throw ConfigError(q.sub("kind"), "t0/t1 belong to cutoff_power");
      } else {
        throw ConfigError(q.sub("kind"), "unknown Hardy profile '" + s.kind + "'");
      }
      h.profiles.push_back(s);
    });
  }
  if (h.epsilons.empty() && h.profiles.empty()) {
    throw ConfigError(path, "give epsilons, profiles or both");
  }
  return h;
}

CounterexampleSpec parse_counterexample(const json& j, const std::string& path) {
  Obj o(j, path);
  o.allow({"n", "R", "p", "alpha_tilde"});
  CounterexampleSpec c;
  c.n = o.integer("n", c.n);
  require_dimension(c.n, o.sub("n"));
  c.R = o.number("R", c.R);
  if (!(c.R > 1.0) || !std::isfinite(c.R)) throw ConfigError(o.sub("R"), "must be finite and > 1");
  c.p = o.number("p", c.p);
  if (!(c.p > 1.0)) throw ConfigError(o.sub("p"), "must be > 1");
  c.alpha_tilde = o.number("alpha_tilde", c.alpha_tilde);
  return c;
}

MemsRunSpec parse_mems(const json& j, const std::string& path, const std::filesystem::path& base) {
  Obj o(j, path);
  o.allow({"n", "ball_radius", "r", "f", "q", "grid_size", "newton_tol", "continuation_steps",
           "max_newton_iterations", "verify", "solution"});
  MemsRunSpec m;
  MemsConfig& c = m.config;
  c.n = o.integer("n", c.n);
  c.ball_radius = o.number("ball_radius", c.ball_radius);
  c.r_param = o.number("r", c.r_param);
  if (o.has("f")) {
    Obj f(o.at("f"), o.sub("f"));
    f.allow({"a", "b"});
    c.f.a = f.number("a", c.f.a);
    c.f.b = f.number("b", c.f.b);
  }
  c.q = o.number("q", c.q);
  const int grid = o.integer("grid_size", static_cast<int>(c.grid_size));
  if (grid < 0) throw ConfigError(o.sub("grid_size"), "must be >= 64");
  c.grid_size = static_cast<std::size_t>(grid);
  c.newton_tol = o.number("newton_tol", c.newton_tol);
  c.continuation_steps = o.integer("continuation_steps", c.continuation_steps);
  c.max_newton_iterations = o.integer("max_newton_iterations", c.max_newton_iterations);
  m.verify = o.boolean("verify", true);
  if (o.has("solution")) {
    m.solution = resolve(o.text("solution"), base).string();
    if (!std::filesystem::exists(m.solution)) {
      throw ConfigError(o.sub("solution"), "file not found: " + m.solution);
    }
  }
  try {
    c.validate();
  } catch (const DomainError& e) {
    const std::string msg = e.what();
    const auto sp = msg.find(' ');
    throw ConfigError(msg.substr(0, sp), msg.substr(sp + 1));
  }
  return m;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"weights", "verify", "sweep", "hardy", "counterexample", "mems"};
  return c;
}

WeightSpec parse_weight(const json& j, const std::string& path, const std::filesystem::path& base) {
  Obj o(j, path);
  const std::string family = o.text("family");
  const double C = o.number("C", 0.0);
  try {
    if (family == "power_law") {
      o.allow({"family", "theta", "B", "C"});
      return WeightSpec::power_law(o.number("theta"), C, o.number("B", kInfinity));
    }
    if (family == "power_law_scaled") {
      o.allow({"family", "alpha", "B", "C"});
      return WeightSpec::power_law_scaled(o.number("alpha"), C, o.number("B", kInfinity));
    }
    if (family == "shifted_power") {
      o.allow({"family", "alpha", "B", "C"});
      if (o.number("B", 1.0) != 1.0) throw ConfigError(o.sub("B"), "shifted_power lives on (0,1)");
      return WeightSpec::shifted_power(o.number("alpha"), C);
    }
    if (family == "constant") {
      o.allow({"family", "value", "B", "C"});
      return WeightSpec::constant(o.number("value", 1.0), C, o.number("B", kInfinity));
    }
    if (family == "tabulated") {
      o.allow({"family", "path", "lambda", "h", "C"});
      if (o.has("path")) {
        if (o.has("lambda") || o.has("h")) throw ConfigError(o.sub("path"), "give either path or lambda/h");
        const auto file = resolve(o.text("path"), base);
        if (!std::filesystem::exists(file)) throw ConfigError(o.sub("path"), "file not found: " + file.string());
        return WeightSpec::tabulated_csv(file, C);
      }
      return WeightSpec::tabulated(number_list(o.at("lambda"), o.sub("lambda")),
                                   number_list(o.at("h"), o.sub("h")), C);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(o.sub("family"), "unknown weight family '" + family + "'");
}

std::vector<LedgerEntry> expand_frontier(const FrontierSpec& f) {
  std::vector<LedgerEntry> out;
  for (double v : f.values) {
    json w = f.weight;
    w[f.parameter] = v;
    const WeightSpec spec = parse_weight(w, "frontier.weight");
    for (double p : f.ps) {
      for (int n : f.ns) {
        LedgerEntry e;
        e.weight = spec;
        e.p = p;
        e.n = n;
        out.push_back(e);
      }
    }
  }
  return out;
}

RunConfig parse_config(const json& j, const std::string& command, const std::filesystem::path& base) {
  RunConfig cfg;
  cfg.raw = j;
  Obj o(j, "");
  const auto& cmds = commands();
  if (std::find(cmds.begin(), cmds.end(), command) == cmds.end()) {
    throw ConfigError("command", "unknown command '" + command + "'");
  }
  cfg.command = command;
  if (o.text("schema") != kConfigSchema) {
    throw ConfigError("schema", "expected \"" + std::string(kConfigSchema) + "\"");
  }
  if (o.has("command") && o.text("command") != command) {
    throw ConfigError("command", "config is for '" + o.text("command") + "', invoked as '" + command + "'");
  }
  cfg.output = o.text("output", "");
  if (o.has("quadrature")) cfg.options = parse_quadrature(o.at("quadrature"), "quadrature");

  if (command == "weights") {
    o.allow({"schema", "command", "output", "quadrature", "weights"});
    each(o.at("weights"), "weights", [&](const json& v, const std::string& p) {
      cfg.ledgers.push_back(parse_ledger_entry(v, p, base));
    });
  } else if (command == "verify" || command == "sweep") {
    if (command == "verify") {
      o.allow({"schema", "command", "output", "quadrature", "checks", "grid", "battery"});
    } else {
      o.allow({"schema", "command", "output", "quadrature", "checks", "grid", "battery", "frontier"});
    }
    if (o.has("checks")) {
      each(o.at("checks"), "checks", [&](const json& v, const std::string& p) {
        char id[32];
        std::snprintf(id, sizeof id, "c%04zu", cfg.checks.size());
        cfg.checks.push_back(parse_check(v, p, base, id));
      });
    }
    if (o.has("grid")) {
      const json& g = o.at("grid");
      if (g.is_array()) {
        each(g, "grid", [&](const json& v, const std::string& p) { parse_grid(v, p, base, cfg.checks); });
      } else {
        parse_grid(g, "grid", base, cfg.checks);
      }
    }
    if (o.has("battery")) {
      if (o.text("battery") != "standard") throw ConfigError("battery", "only \"standard\" is defined");
      auto b = standard_battery();
      cfg.checks.insert(cfg.checks.end(), b.begin(), b.end());
    }
    if (o.has("frontier")) {
      if (!cfg.checks.empty()) throw ConfigError("frontier", "a sweep runs either a frontier or checks");
      cfg.frontier = parse_frontier(o.at("frontier"), "frontier", base);
    }
    if (cfg.checks.empty() && !cfg.frontier) {
      throw ConfigError("checks", command == "verify" ? "give checks, grid or battery"
                                                      : "give checks, grid, battery or frontier");
    }
    for (auto& c : cfg.checks) c.options = cfg.options;
  } else if (command == "hardy") {
    o.allow({"schema", "command", "output", "quadrature", "hardy"});
    cfg.hardy = parse_hardy(o.at("hardy"), "hardy");
  } else if (command == "counterexample") {
    o.allow({"schema", "command", "output", "quadrature", "counterexample"});
    cfg.counterexample = parse_counterexample(o.at("counterexample"), "counterexample");
  } else if (command == "mems") {
    o.allow({"schema", "command", "output", "quadrature", "mems"});
    cfg.mems = parse_mems(o.at("mems"), "mems", base);
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, const std::string& command) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j, command, path.parent_path());
}

}  // namespace gnlab::cli
