#include <gnlab/battery.hpp>
#include <gnlab/report_io.hpp>

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>
#include <sstream>

using namespace gnlab;

TEST_CASE("number formatting") {
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(json_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(json_number(0.5) == 0.5);
}

TEST_CASE("csv quoting and line endings") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"x\"") == "\"say \"\"x\"\"\"");
  const auto path = std::filesystem::temp_directory_path() / "gnlab_test_io" / "t.csv";
  write_csv(path, {"a", "b"}, {{"1", "x,y"}, {"2", "z"}});
  std::ifstream in(path, std::ios::binary);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text == "a,b\n1,\"x,y\"\n2,z\n");
}

TEST_CASE("report serialization") {
  const auto r = check_main2(profiles::paraboloid(2, 0.5), WeightSpec::constant(1.0, 0.0, 1.0), 3.0);
  const auto j = to_json(r);
  CHECK(j["theorem_id"] == "main2");
  CHECK(j["verdict"] == "holds");
  CHECK(j["lhs"]["converged"] == true);
  CHECK(j["rhs_terms"].size() == 1);
  CHECK(j["hypotheses"].size() == r.hypotheses.size());
  CHECK(j["config_echo"]["p"] == 3.0);

  const auto c = check_classical_gn(profiles::paraboloid(2), 2.0, 2.0, 2.0);
  CHECK(to_json(c)["constant"] == "nan");

  const auto row = summary_row("x", r, "k=v");
  CHECK(row.size() == summary_header().size());
  CHECK(row[1] == "main2");
  CHECK(row[11] == "holds");
}

TEST_CASE("ledger rows") {
  const auto l = build_ledger(WeightSpec::power_law_scaled(2.0), 3.0, 6);
  const auto row = ledger_row("w", l);
  CHECK(row.size() == ledger_header().size());
  CHECK(row[5] == "3.33333333333");
  CHECK(row[7] == "false");
  const auto j = to_json(l);
  CHECK(j["admissible_goal5"] == false);
  CHECK_FALSE(l.e_goal6.has_value());  // no control supplied
  CHECK(j["E"].is_null());
  CHECK(j["kappa"].is_null());
}

TEST_CASE("plot curves") {
  const auto u = profiles::paraboloid(2);
  const auto rows = profile_curve_rows(u, 11);
  REQUIRE(rows.size() == 11);
  CHECK(rows.front()[0] == "0");
  CHECK(rows.front()[1] == "1");
  CHECK(rows.back()[0] == "1");
  CHECK(rows[0].size() == profile_curve_header().size());
  const auto ic = integrand_curve_rows(u, WeightSpec::constant(), 2.0, 9);
  CHECK(ic.size() == 9);
  CHECK(ic[0].size() == integrand_curve_header().size());
}

TEST_CASE("standard battery layout") {
  const auto b = standard_battery();
  CHECK(b.size() >= 50);
  std::set<std::string> ids;
  std::set<double> ps;
  std::set<int> ns;
  for (const auto& c : b) {
    ids.insert(c.id);
    ps.insert(c.p);
    ns.insert(c.n);
    // the p = 2 equality case of goal3 is left out
    if (c.theorem == TheoremId::goal3 && c.p == 2.0) {
      CHECK((c.weight.C() != 0.0 || c.profile.kind == "paraboloid_power"));
    }
    if (c.theorem == TheoremId::goal6) CHECK(c.dtilde.has_value());
  }
  CHECK(ids.size() == b.size());
  CHECK(ps == std::set<double>{2.0, 2.1, 2.5, 3.0, 4.0});
  CHECK(ns == std::set<int>{2, 3, 5, 6});
}

TEST_CASE("run_check marks violated hypotheses as not applicable") {
  CheckSpec c;
  c.theorem = TheoremId::goal5;
  c.p = 3.0;
  c.n = 2;
  const auto o = run_check(c);
  CHECK_FALSE(o.applicable);
  CHECK(o.skip_reason.find("p < n") != std::string::npos);
  CHECK(to_json(o)["verdict"] == "not_applicable");
  CHECK(summary_row(o)[11] == "not_applicable");

  CheckSpec g;
  g.theorem = TheoremId::goal6;
  g.p = 3.0;
  g.n = 2;
  g.weight = WeightSpec::shifted_power(-2.0, -1.0);
  g.profile.amplitude = 0.5;
  const auto og = run_check(g);
  REQUIRE(og.applicable);
  CHECK(og.spec.dtilde.has_value());
  CHECK(og.report->verdict == Verdict::holds);
  CHECK(og.spec.parameters().find("dtilde_heuristic=1") != std::string::npos);
}
