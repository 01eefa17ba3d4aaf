#include <gnlab/report_io.hpp>

#include <gnlab/errors.hpp>
#include <gnlab/seminorm.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>

namespace gnlab {

namespace {

nlohmann::json opt_number(const std::optional<double>& x) {
  return x ? json_number(*x) : nlohmann::json(nullptr);
}

std::string opt_text(const std::optional<double>& x) { return x ? format_number(*x) : ""; }

constexpr Integrand kIntegrands[] = {Integrand::grad_p_h,  Integrand::hess_T_h,
                                     Integrand::lap_T_h,   Integrand::inf_T_h,
                                     Integrand::spade_T_h, Integrand::hardy_T_h,
                                     Integrand::hardy_T_h2};

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

nlohmann::json json_number(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

nlohmann::json to_json(const QuadResult& q) {
  return {{"value", json_number(q.value)},
          {"abs_error_estimate", json_number(q.abs_error_estimate)},
          {"panels_used", q.panels_used},
          {"converged", q.converged}};
}

nlohmann::json to_json(const InequalityReport& r) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : r.rhs_terms) {
    terms.push_back({{"label", t.label}, {"value", to_json(t.value)}, {"multiplier", json_number(t.multiplier)}});
  }
  nlohmann::json hyps = nlohmann::json::array();
  for (const auto& h : r.hypotheses) {
    hyps.push_back({{"name", h.name}, {"holds", h.holds}, {"detail", h.detail}});
  }
  return {{"theorem_id", to_string(r.theorem_id)},
          {"verdict", to_string(r.verdict)},
          {"n", r.n},
          {"p", json_number(r.p)},
          {"weight", r.weight},
          {"field", r.field},
          {"lhs", to_json(r.lhs)},
          {"rhs_terms", terms},
          {"constant", json_number(r.constant)},
          {"ratio", json_number(r.ratio)},
          {"exponent", json_number(r.exponent)},
          {"lhs_compared", json_number(r.lhs_compared)},
          {"lhs_sigma", json_number(r.lhs_sigma)},
          {"rhs_compared", json_number(r.rhs_compared)},
          {"rhs_sigma", json_number(r.rhs_sigma)},
          {"hypotheses", hyps},
          {"notes", r.notes},
          {"config_echo", r.config_echo}};
}

nlohmann::json to_json(const ConstantsLedger& l) {
  nlohmann::json hyps = nlohmann::json::array();
  for (const auto& h : l.hypotheses) {
    hyps.push_back({{"theorem", h.theorem}, {"name", h.name}, {"holds", h.holds}, {"detail", h.detail}});
  }
  return {{"p", json_number(l.p)},
          {"n", l.n},
          {"c_np", json_number(l.c_np)},
          {"c_hcp", json_number(l.c_hcp)},
          {"c_hcp_refinement_delta", json_number(l.c_hcp_delta)},
          {"g_at_zero", json_number(l.g_at_zero)},
          {"D", opt_number(l.d_goal5)},
          {"A", opt_number(l.a_goal5)},
          {"g_control", l.g_control},
          {"g_constant", l.g_constant},
          {"E", opt_number(l.e_goal6)},
          {"c1", opt_number(l.c1)},
          {"c2", opt_number(l.c2)},
          {"dtilde", opt_number(l.dtilde)},
          {"kappa", opt_number(l.kappa)},
          {"A_omega", opt_number(l.a_omega)},
          {"admissible_goal5", l.admissible_goal5},
          {"admissible_goal6", l.admissible_goal6},
          {"hypotheses", hyps}};
}

nlohmann::json to_json(const CheckOutcome& o) {
  if (o.applicable && o.report) {
    nlohmann::json j = to_json(*o.report);
    j["id"] = o.spec.id;
    return j;
  }
  return {{"id", o.spec.id},
          {"theorem_id", to_string(o.spec.theorem)},
          {"verdict", "not_applicable"},
          {"n", o.spec.n},
          {"p", json_number(o.spec.p)},
          {"weight", o.spec.weight.descriptor()},
          {"field", o.spec.profile.descriptor()},
          {"reason", o.skip_reason},
          {"config_echo", {{"parameters", o.spec.parameters()}}}};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path.string());
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << csv_field(cells[i]);
    }
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

std::vector<std::string> summary_header() {
  return {"id", "theorem_id", "p", "n", "weight", "field", "domain", "lhs", "rhs", "constant",
          "ratio", "verdict", "parameters"};
}

std::vector<std::string> summary_row(const std::string& id, const InequalityReport& r,
                                     const std::string& parameters) {
  std::string domain;
  if (r.config_echo.contains("r_in") && r.config_echo.contains("r_out")) {
    domain = "radii=" + format_number(r.config_echo["r_in"].get<double>()) + ":" +
             format_number(r.config_echo["r_out"].get<double>());
  }
  return {id,
          to_string(r.theorem_id),
          format_number(r.p),
          std::to_string(r.n),
          r.weight,
          r.field,
          domain,
          format_number(r.lhs_compared),
          format_number(r.rhs_compared),
          format_number(r.constant),
          format_number(r.ratio),
          to_string(r.verdict),
          parameters};
}

std::vector<std::string> summary_row(const CheckOutcome& o) {
  if (o.applicable && o.report) return summary_row(o.spec.id, *o.report, o.spec.parameters());
  const std::string domain = "radii=0:" + format_number(o.spec.profile.radius);
  return {o.spec.id,
          to_string(o.spec.theorem),
          format_number(o.spec.p),
          std::to_string(o.spec.n),
          o.spec.weight.descriptor(),
          o.spec.profile.descriptor(),
          domain,
          "",
          "",
          "",
          "",
          "not_applicable",
          o.spec.parameters()};
}

std::vector<std::string> ledger_header() {
  return {"weight", "p", "n", "c_np", "c_hcp", "D", "A", "admissible_goal5", "E", "c1", "c2",
          "dtilde", "kappa", "A_omega", "admissible_goal6"};
}

std::vector<std::string> ledger_row(const std::string& weight, const ConstantsLedger& l) {
  return {weight,
          format_number(l.p),
          std::to_string(l.n),
          format_number(l.c_np),
          format_number(l.c_hcp),
          opt_text(l.d_goal5),
          opt_text(l.a_goal5),
          l.admissible_goal5 ? "true" : "false",
          opt_text(l.e_goal6),
          opt_text(l.c1),
          opt_text(l.c2),
          opt_text(l.dtilde),
          opt_text(l.kappa),
          opt_text(l.a_omega),
          l.admissible_goal6 ? "true" : "false"};
}

std::vector<std::string> profile_curve_header() {
  return {"s", "w", "w_prime", "w_double_prime", "laplacian", "hessian_norm"};
}

std::vector<std::vector<std::string>> profile_curve_rows(const RadialField& field,
                                                         std::size_t nodes) {
  std::vector<std::vector<std::string>> rows;
  const double a = field.r_in();
  const double b = field.r_out();
  for (std::size_t i = 0; i < nodes; ++i) {
    const double s = a + (b - a) * static_cast<double>(i) / static_cast<double>(nodes - 1);
    const RadialOps o = radial_ops(field, s);
    rows.push_back({format_number(s), format_number(o.w), format_number(o.dw), format_number(o.d2w),
                    format_number(o.laplacian), format_number(o.hessian)});
  }
  return rows;
}

std::vector<std::string> integrand_curve_header() {
  std::vector<std::string> h{"s"};
  for (Integrand i : kIntegrands) h.push_back(to_string(i));
  return h;
}

std::vector<std::vector<std::string>> integrand_curve_rows(const RadialField& field,
                                                           const WeightSpec& h_spec, double p,
                                                           std::size_t nodes) {
  std::vector<std::vector<std::string>> rows;
  for (double s : field.probe_radii(nodes)) {
    std::vector<std::string> row{format_number(s)};
    for (Integrand i : kIntegrands) {
      double v = std::numeric_limits<double>::quiet_NaN();
      try {
        v = integrand_value(field, i, p, h_spec, s);
      } catch (const Error&) {
      }
      row.push_back(format_number(v));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace gnlab
