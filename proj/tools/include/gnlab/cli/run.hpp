#pragma once

#include <gnlab/cli/config.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace gnlab::cli {

struct RunOptions {
  std::string command;
  std::filesystem::path config_path;
  std::optional<std::filesystem::path> out_dir;
  int jobs = 1;
  std::optional<long long> seed;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUnexpected = 1;
inline constexpr int kExitConfig = 2;

/// Loads the configuration, runs the command and writes report.json,
/// summary.csv and plotdata/. Returns the process exit status.
int run(const RunOptions& opt);

/// Same, for an already parsed configuration.
int run(const RunConfig& cfg, const RunOptions& opt);

/// Sets the log level from GNLAB_LOG (error, info or debug; default error).
void init_logging();

}  // namespace gnlab::cli
