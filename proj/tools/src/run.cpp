#include <gnlab/cli/run.hpp>

#include <gnlab/cli/pool.hpp>
#include <gnlab/errors.hpp>
#include <gnlab/hardy.hpp>
#include <gnlab/mems.hpp>
#include <gnlab/report_io.hpp>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

namespace gnlab::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using Rows = std::vector<std::vector<std::string>>;

struct Artifacts {
  fs::path dir;
  json report;

  fs::path plot(const std::string& name) const { return dir / "plotdata" / name; }
};

std::string numbered(const char* stem, std::size_t i) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%03zu.csv", stem, i);
  return buf;
}

bool unexpected(Verdict v) { return v != Verdict::holds; }

ConstantsLedger ledger_for(const LedgerEntry& e) {
  if (e.control == "constant") {
    const GControl g = constant_control(e.control_value);
    return build_ledger(e.weight, e.p, e.n, e.dtilde, &g);
  }
  const GControl g = natural_control(e.weight, e.p);
  return build_ledger(e.weight, e.p, e.n, e.dtilde, &g);
}

void write_profile_curves(const std::vector<CheckOutcome>& outcomes, const Artifacts& a) {
  std::map<std::pair<std::string, int>, std::size_t> seen;
  Rows index;
  for (const auto& o : outcomes) {
    const auto key = std::make_pair(o.spec.profile.descriptor(), o.spec.n);
    if (seen.count(key)) continue;
    const std::size_t k = seen.size();
    seen[key] = k;
    const std::string name = numbered("profile", k);
    write_csv(a.plot(name), profile_curve_header(), profile_curve_rows(o.spec.profile.build(o.spec.n)));
    index.push_back({name, std::to_string(o.spec.n), key.first});
  }
  write_csv(a.plot("profiles_index.csv"), {"file", "n", "field"}, index);
}

int run_checks(const RunConfig& cfg, const RunOptions& opt, Artifacts& a) {
  spdlog::info("running {} checks on {} worker(s)", cfg.checks.size(), opt.jobs);
  const auto outcomes = ordered_map(cfg.checks, opt.jobs, [](const CheckSpec& s) {
    auto o = run_check(s);
    spdlog::debug("{} {}: {}", s.id, to_string(s.theorem),
                  o.applicable ? to_string(o.report->verdict) : "not_applicable (" + o.skip_reason + ")");
    return o;
  });
  Rows rows;
  int bad = 0;
  std::size_t applicable = 0;
  for (const auto& o : outcomes) {
    rows.push_back(summary_row(o));
    a.report["reports"].push_back(to_json(o));
    if (o.applicable) {
      ++applicable;
      if (unexpected(o.report->verdict)) {
        ++bad;
        spdlog::error("{} {} {} on {}: {}", o.spec.id, to_string(o.spec.theorem),
                      o.report->weight, o.report->field, to_string(o.report->verdict));
      }
    }
  }
  write_csv(a.dir / "summary.csv", summary_header(), rows);
  write_profile_curves(outcomes, a);
  if (outcomes.size() <= 64) {
    for (const auto& o : outcomes) {
      if (!o.applicable || o.spec.theorem == TheoremId::classical_gn) continue;
      write_csv(a.plot("integrands_" + o.spec.id + ".csv"), integrand_curve_header(),
                integrand_curve_rows(o.spec.profile.build(o.spec.n), o.spec.weight, o.spec.p));
    }
  }
  spdlog::info("{} checks, {} applicable, {} unexpected verdicts", outcomes.size(), applicable, bad);
  return bad == 0 ? kExitOk : kExitUnexpected;
}

int run_ledgers(const std::vector<LedgerEntry>& entries, const RunOptions& opt, Artifacts& a,
                const std::string& parameter, const std::vector<double>& values) {
  const auto ledgers = ordered_map(entries, opt.jobs, ledger_for);
  std::vector<std::string> header = ledger_header();
  if (!parameter.empty()) header.insert(header.begin(), {"parameter", "value"});
  Rows rows;
  a.report["ledgers"] = json::array();
  const std::size_t per_value = values.empty() ? 0 : entries.size() / values.size();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto row = ledger_row(entries[i].weight.descriptor(), ledgers[i]);
    if (!parameter.empty()) row.insert(row.begin(), {parameter, format_number(values[i / per_value])});
    rows.push_back(std::move(row));
    a.report["ledgers"].push_back({{"weight", entries[i].weight.descriptor()}, {"ledger", to_json(ledgers[i])}});
  }
  write_csv(a.dir / "summary.csv", header, rows);

  // h, H_C, T and both G on a uniform grid of each distinct weight
  std::map<std::string, std::size_t> seen;
  for (const auto& e : entries) {
    const std::string name = e.weight.descriptor() + "|p=" + format_number(e.p);
    if (seen.count(name)) continue;
    const std::size_t k = seen.size();
    seen[name] = k;
    const double L = e.weight.B_finite() ? e.weight.B() : 10.0;
    Rows curve;
    for (int i = 1; i < 200; ++i) {
      const double lam = L * i / 200.0;
      auto safe = [&](auto&& f) {
        try {
          return format_number(f());
        } catch (const Error&) {
          return std::string("nan");
        }
      };
      curve.push_back({format_number(lam), safe([&] { return eval_h(e.weight, lam); }),
                       safe([&] { return eval_H(e.weight, lam); }),
                       safe([&] { return eval_T(e.weight, lam); }),
                       safe([&] { return eval_G(e.weight, e.p, 1.0 / e.p, lam); }),
                       safe([&] { return eval_G(e.weight, e.p, 2.0 / e.p, lam); })});
    }
    write_csv(a.plot(numbered("weight", k)), {"lambda", "h", "H_C", "T", "G_1_over_p", "G_2_over_p"},
              curve);
  }
  return kExitOk;
}

int run_hardy(const RunConfig& cfg, Artifacts& a) {
  const HardySpec& h = cfg.hardy;
  Rows rows;
  int bad = 0;
  for (std::size_t i = 0; i < h.profiles.size(); ++i) {
    const HardyProfileSpec& s = h.profiles[i];
    const HalfLineProfile f = s.kind == "cutoff_power" ? cutoff_power(s.beta, s.t0, s.t1)
                                                       : power_with_decaying_tail(s.beta, s.gamma);
    char id[32];
    std::snprintf(id, sizeof id, "h%04zu", i);
    InequalityReport rep;
    try {
      rep = check_hardy(f, h.p, h.alpha, cfg.options);
    } catch (const HypothesisError& e) {
      spdlog::warn("{}: {} not applicable: {}", id, f.name, e.what());
      a.report["reports"].push_back({{"id", id}, {"theorem_id", "hardy"}, {"verdict", "not_applicable"},
                                     {"field", f.name}, {"reason", e.what()}});
      continue;
    }
    rep.config_echo["id"] = id;
    if (unexpected(rep.verdict)) ++bad;
    rows.push_back(summary_row(id, rep, "alpha=" + format_number(h.alpha)));
    json j = to_json(rep);
    j["id"] = id;
    a.report["reports"].push_back(j);

    Rows curve;
    const double end = std::isfinite(f.support_end) ? f.support_end : 10.0;
    for (int k = 1; k <= 400; ++k) {
      const double t = end * k / 400.0;
      curve.push_back({format_number(t), format_number(f.f(t)), format_number(f.df(t))});
    }
    write_csv(a.plot(numbered("hardy_profile", i)), {"t", "f", "f_prime"}, curve);
  }
  write_csv(a.dir / "summary.csv", summary_header(), rows);

  if (!h.epsilons.empty()) {
    const auto probe = hardy_sharpness_probe(h.p, h.alpha, h.epsilons, cfg.options);
    Rows seq;
    json js = json::array();
    for (std::size_t i = 0; i < probe.size(); ++i) {
      const auto& pt = probe[i];
      seq.push_back({format_number(pt.epsilon), format_number(pt.ratio_over_constant),
                     format_number(pt.lhs), format_number(pt.rhs)});
      js.push_back({{"epsilon", pt.epsilon}, {"ratio_over_constant", pt.ratio_over_constant},
                    {"lhs", pt.lhs}, {"rhs", pt.rhs}});
      if (!(pt.ratio_over_constant < 1.0)) {
        ++bad;
        spdlog::error("sharpness probe at epsilon {} exceeds the constant", pt.epsilon);
      }
      if (i > 0 && !(pt.ratio_over_constant > probe[i - 1].ratio_over_constant)) {
        spdlog::warn("sharpness ratios not increasing at epsilon {}", pt.epsilon);
      }
    }
    a.report["sharpness"] = {{"p", h.p}, {"alpha", h.alpha},
                             {"constant", json_number(hardy_constant(h.p, h.alpha))}, {"points", js}};
    write_csv(a.plot("sharpness.csv"), {"epsilon", "ratio_over_constant", "lhs", "rhs"}, seq);
  }
  return bad == 0 ? kExitOk : kExitUnexpected;
}

int run_counterexample_cmd(const RunConfig& cfg, Artifacts& a) {
  const CounterexampleSpec& c = cfg.counterexample;
  InequalityReport rep = run_counterexample(c.n, c.R, c.p, c.alpha_tilde, cfg.options);
  const std::string params = "R=" + format_number(c.R) + ";alpha_tilde=" + format_number(c.alpha_tilde);
  write_csv(a.dir / "summary.csv", summary_header(), {summary_row("x0000", rep, params)});
  json j = to_json(rep);
  j["id"] = "x0000";
  a.report["reports"].push_back(j);
  write_csv(a.plot("profile_000.csv"), profile_curve_header(),
            profile_curve_rows(profiles::harmonic_annulus(c.n, c.R)));
  if (rep.verdict != Verdict::fails) {
    spdlog::error("counterexample expected verdict fails, got {}", to_string(rep.verdict));
    return kExitUnexpected;
  }
  return kExitOk;
}

int run_mems(const RunConfig& cfg, Artifacts& a) {
  MemsConfig mc = cfg.mems.config;
  MemsSolution sol;
  if (!cfg.mems.solution.empty()) {
    LoadedSolution loaded = load_solution(cfg.mems.solution);
    sol = std::move(loaded.solution);
    mc = loaded.config;
    spdlog::info("loaded solution {}", cfg.mems.solution);
  } else {
    try {
      sol = solve_mems(mc);
    } catch (const PullInError& e) {
      spdlog::error("{} (last converged r = {})", e.what(), e.last_good_r());
      a.report["solution"] = {{"converged", false}, {"pull_in", true},
                              {"last_good_r", e.last_good_r()}, {"detail", e.what()}};
      write_csv(a.dir / "summary.csv", summary_header(), {});
      return kExitUnexpected;
    }
    save_solution(sol, mc, a.dir / "solution.csv");
  }
  json path = json::array();
  Rows cont;
  for (const auto& pt : sol.path) {
    path.push_back({{"r", pt.r}, {"max_u", pt.max_u}, {"newton_iterations", pt.newton_iterations}});
    cont.push_back({format_number(pt.r), format_number(pt.max_u), std::to_string(pt.newton_iterations)});
  }
  a.report["solution"] = {{"converged", sol.converged},     {"residual_norm", sol.residual_norm},
                          {"max_u", sol.max_u},             {"r_reached", sol.r_reached},
                          {"grid_size", sol.grid.size()},   {"path", path}};
  write_csv(a.plot("mems_continuation.csv"), {"r", "max_u", "newton_iterations"}, cont);
  write_csv(a.plot("mems_profile.csv"), profile_curve_header(),
            profile_curve_rows(solution_field(sol, mc)));

  int bad = sol.converged ? 0 : 1;
  Rows rows;
  if (cfg.mems.verify) {
    const std::string params = "r=" + format_number(mc.r_param) + ";q=" + format_number(mc.q) +
                               ";f=" + mc.f.descriptor() +
                               ";grid_size=" + std::to_string(mc.grid_size) +
                               ";ball_radius=" + format_number(mc.ball_radius);
    try {
      InequalityReport bound = verify_mems_bound(sol, mc, cfg.options);
      if (unexpected(bound.verdict)) ++bad;
      rows.push_back(summary_row("m0000", bound, params));
      json j = to_json(bound);
      j["id"] = "m0000";
      a.report["reports"].push_back(j);
    } catch (const HypothesisError& e) {
      // the solve stands; only the verification is abandoned
      spdlog::error("verification aborted: {}", e.what());
      a.report["reports"].push_back({{"id", "m0000"}, {"verdict", "not_applicable"}, {"reason", e.what()}});
      ++bad;
    }
    const CompositionReport comp = verify_composition(sol, mc, cfg.options);
    a.report["composition"] = {{"lhs", json_number(comp.lhs)},
                               {"rhs", json_number(comp.rhs)},
                               {"relative_difference", json_number(comp.relative_difference)},
                               {"seminorm", json_number(comp.seminorm)},
                               {"max_pointwise_residual", json_number(comp.max_pointwise_residual)},
                               {"p", json_number(comp.p)}};
    if (!(comp.relative_difference <= 1e-6)) {
      spdlog::error("composition identity off by {}", comp.relative_difference);
      ++bad;
    }
  }
  write_csv(a.dir / "summary.csv", summary_header(), rows);
  return bad == 0 ? kExitOk : kExitUnexpected;
}

}  // namespace

void init_logging() {
  static bool done = false;
  if (!done) {
    spdlog::set_default_logger(spdlog::stderr_color_mt("gnlab"));
    spdlog::set_pattern("gnlab [%l] %v");
    done = true;
  }
  const char* env = std::getenv("GNLAB_LOG");
  const std::string level = env ? env : "error";
  if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else if (level == "info") {
    spdlog::set_level(spdlog::level::info);
  } else {
    spdlog::set_level(spdlog::level::err);
    if (level != "error") spdlog::error("GNLAB_LOG={} not recognised; using error", level);
  }
}

int run(const RunConfig& cfg, const RunOptions& opt) {
  Artifacts a;
  a.dir = opt.out_dir ? *opt.out_dir : fs::path(cfg.output.empty() ? "gnlab-out" : cfg.output);
  fs::create_directories(a.dir / "plotdata");
  a.report = {{"schema", kReportSchema},
              {"command", cfg.command},
              {"seed", opt.seed ? json(*opt.seed) : json(nullptr)},
              {"config", cfg.raw},
              {"reports", json::array()}};
  int status = kExitOk;
  try {
    if (cfg.command == "weights") {
      status = run_ledgers(cfg.ledgers, opt, a, "", {});
    } else if (cfg.command == "verify" || cfg.command == "sweep") {
      if (cfg.frontier) {
        status = run_ledgers(expand_frontier(*cfg.frontier), opt, a, cfg.frontier->parameter,
                             cfg.frontier->values);
      } else {
        status = run_checks(cfg, opt, a);
      }
    } else if (cfg.command == "hardy") {
      status = run_hardy(cfg, a);
    } else if (cfg.command == "counterexample") {
      status = run_counterexample_cmd(cfg, a);
    } else if (cfg.command == "mems") {
      status = run_mems(cfg, a);
    }
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    a.report["error"] = e.what();
    status = kExitUnexpected;
  }
  a.report["exit_status"] = status;
  write_json(a.dir / "report.json", a.report);
  return status;
}

int run(const RunOptions& opt) {
  init_logging();
  RunConfig cfg;
  try {
    cfg = load_config(opt.config_path, opt.command);
  } catch (const ConfigError& e) {
    spdlog::critical("configuration error: {}", e.what());
    return kExitConfig;
  }
  return run(cfg, opt);
}

}  // namespace gnlab::cli
