#include <gnlab/cli/run.hpp>

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace gnlab::cli;
  CLI::App app{"gnlab: numerical checks of weighted Gagliardo-Nirenberg type inequalities"};
  RunOptions opt;
  std::string config;
  std::string out;
  long long seed = 0;
  app.add_option("command", opt.command, "weights | verify | sweep | hardy | counterexample | mems")
      ->required()
      ->check(CLI::IsMember(commands()));
  app.add_option("--config", config, "JSON run configuration")->required();
  auto* out_opt = app.add_option("--out", out, "output directory (default: config 'output' or gnlab-out)");
  app.add_option("--jobs", opt.jobs, "worker threads for sweeps")->check(CLI::Range(1, 1024));
  auto* seed_opt = app.add_option("--seed", seed, "recorded in report.json; all computations are deterministic");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  opt.config_path = config;
  if (*out_opt) opt.out_dir = out;
  if (*seed_opt) opt.seed = seed;
  return run(opt);
}
