#pragma once

#include <gnlab/battery.hpp>
#include <gnlab/inequalities.hpp>
#include <gnlab/weights.hpp>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace gnlab {

/// %.12g, with "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double x);

/// JSON number for finite x, otherwise the string from format_number.
nlohmann::json json_number(double x);

nlohmann::json to_json(const QuadResult& q);
nlohmann::json to_json(const InequalityReport& report);
nlohmann::json to_json(const ConstantsLedger& ledger);
/// Report of an applicable outcome, or a stub with verdict "not_applicable".
nlohmann::json to_json(const CheckOutcome& outcome);

/// Quotes fields containing ',', '"' or a line break.
std::string csv_field(const std::string& s);

/// Writes rows with ',' separators and LF endings.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// One row per check: id, theorem_id, p, n, weight, field, domain, lhs, rhs,
/// constant, ratio, verdict, parameters.
std::vector<std::string> summary_header();
std::vector<std::string> summary_row(const CheckOutcome& outcome);
std::vector<std::string> summary_row(const std::string& id, const InequalityReport& report,
                                     const std::string& parameters);

std::vector<std::string> ledger_header();
std::vector<std::string> ledger_row(const std::string& weight, const ConstantsLedger& ledger);

/// s, w, w', w'', |Δu|, |∇²u| on `nodes` points of [r_in, r_out].
std::vector<std::vector<std::string>> profile_curve_rows(const RadialField& field,
                                                         std::size_t nodes = 201);
std::vector<std::string> profile_curve_header();

/// s and every seminorm integrand (without the sphere measure) at `nodes`
/// interior radii.
std::vector<std::vector<std::string>> integrand_curve_rows(const RadialField& field,
                                                           const WeightSpec& h_spec, double p,
                                                           std::size_t nodes = 201);
std::vector<std::string> integrand_curve_header();

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace gnlab
