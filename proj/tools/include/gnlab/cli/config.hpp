#pragma once

#include <gnlab/battery.hpp>
#include <gnlab/mems.hpp>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gnlab::cli {

inline constexpr const char* kConfigSchema = "gnlab.config/1";
inline constexpr const char* kReportSchema = "gnlab.report/1";

/// Invalid configuration; `field()` is the dotted path of the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct LedgerEntry {
  WeightSpec weight = WeightSpec::constant();
  double p = 3.0;
  int n = 2;
  std::optional<double> dtilde;
  std::string control = "natural";
  double control_value = 1.0;
};

/// Ledgers over (weight parameter) × p × n for one weight family.
struct FrontierSpec {
  nlohmann::json weight;  // template; `parameter` is overwritten per value
  std::string parameter;
  std::vector<double> values;
  std::vector<double> ps;
  std::vector<int> ns;
};

struct HardyProfileSpec {
  std::string kind = "cutoff_power";  // cutoff_power | power_with_decaying_tail
  double beta = 1.0;
  double t0 = 1.0;
  double t1 = 2.0;
  double gamma = 1.0;
};

struct HardySpec {
  double p = 2.0;
  double alpha = 0.0;
  std::vector<double> epsilons;
  std::vector<HardyProfileSpec> profiles;
};

struct CounterexampleSpec {
  int n = 3;
  double R = 10.0;
  double p = 3.0;
  double alpha_tilde = 0.0;
};

struct MemsRunSpec {
  MemsConfig config;
  bool verify = true;
  /// Load this solution instead of solving.
  std::string solution;
};

struct RunConfig {
  std::string command;
  nlohmann::json raw;
  std::string output;
  CheckOptions options;
  std::vector<CheckSpec> checks;
  std::vector<LedgerEntry> ledgers;
  std::optional<FrontierSpec> frontier;
  HardySpec hardy;
  CounterexampleSpec counterexample;
  MemsRunSpec mems;
};

/// Commands accepted by `gnlab`.
const std::vector<std::string>& commands();

/// Parses and validates; relative paths resolve against `base_dir`.
/// Throws ConfigError.
RunConfig parse_config(const nlohmann::json& j, const std::string& command,
                       const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path, const std::string& command);

/// JSON weight descriptor, e.g. {"family": "shifted_power", "alpha": -2, "C": -1}.
WeightSpec parse_weight(const nlohmann::json& j, const std::string& path,
                        const std::filesystem::path& base_dir = {});

/// Expands the frontier into ledger entries in (value, p, n) order.
std::vector<LedgerEntry> expand_frontier(const FrontierSpec& f);

}  // namespace gnlab::cli
