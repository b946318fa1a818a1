#include "repsim/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "repsim/errors.hpp"
#include "repsim/sim.hpp"

namespace repsim {

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string strategies;
  std::string degrees;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("config", opts.config_path, "scenario config file")->required();
  cmd->add_option("--out", opts.out, "output directory (overrides config)");
  cmd->add_option("--seed", opts.seed, "replace the config seed list")
      ->each([&opts](const std::string&) { opts.seed_set = true; });
  cmd->add_option("--strategies", opts.strategies,
                  "comma list replacing the config strategies");
  cmd->add_option("--degrees", opts.degrees,
                  "comma list replacing the config degrees");
}

ScenarioConfig load_config(const CommonOpts& opts) {
  ScenarioConfig cfg = parse_config_file(opts.config_path);
  if (opts.seed_set) cfg.seeds = {opts.seed};
  // Overrides reuse the config-file list syntax.
  if (!opts.strategies.empty()) {
    cfg.strategies =
        parse_config_text("strategies = " + opts.strategies).strategies;
  }
  if (!opts.degrees.empty()) {
    cfg.degrees = parse_config_text("degrees = " + opts.degrees).degrees;
  }
  validate_config(cfg);
  return cfg;
}

std::string resolve_out_dir(const CommonOpts& opts, const ScenarioConfig& cfg) {
  if (!opts.out.empty()) return opts.out;
  if (!cfg.out_dir.empty()) return cfg.out_dir;
  if (const char* env = std::getenv("REPSIM_OUT"); env && *env) return env;
  return "results";
}

int cmd_run(const CommonOpts& opts) {
  const ScenarioConfig cfg = load_config(opts);
  const std::string out_dir = resolve_out_dir(opts, cfg);
  const std::uint64_t seed = cfg.seeds.front();
  ScenarioResult result = run_scenario(cfg, seed, cfg.degrees);
  write_scenario_outputs(result, out_dir, "s" + std::to_string(seed));
  write_summary_outputs(result.summary, out_dir);
  if (!result.isolation_ok) {
    std::cerr << "error: placement mutated the shared world\n";
    return 1;
  }
  std::cout << "run complete: seed " << seed << ", " << result.runs.size()
            << " strategy/degree runs, " << result.rows.size()
            << " per-slot rows -> " << out_dir << "\n";
  return 0;
}

int cmd_sweep(const CommonOpts& opts) {
  const ScenarioConfig cfg = load_config(opts);
  const std::string out_dir = resolve_out_dir(opts, cfg);
  const SweepResult sweep = run_sweep(cfg, out_dir);
  if (!sweep.isolation_ok) {
    std::cerr << "error: placement mutated the shared world\n";
    return 1;
  }
  std::cout << "sweep complete: " << cfg.seeds.size() << " seeds x "
            << cfg.degrees.size() << " degrees -> " << out_dir << "\n";
  return 0;
}

int cmd_report(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw ConfigError("not a results directory: " + dir);
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("perslot_", 0) == 0 && entry.path().extension() == ".csv") {
      files.push_back(entry.path());
    }
  }
  if (files.empty()) {
    throw ConfigError("no perslot_*.csv files in " + dir);
  }
  std::sort(files.begin(), files.end());
  SummaryMap summary;
  for (const fs::path& p : files) {
    std::ifstream in(p);
    if (!in) throw ConfigError("cannot read " + p.string());
    aggregate_perslot_csv(in, summary);
  }
  write_summary_outputs(summary, dir);
  std::cout << "report complete: " << files.size() << " per-slot files -> "
            << (fs::path(dir) / "summary.csv").string() << "\n";
  return 0;
}

int cmd_validate(const CommonOpts& opts) {
  load_config(opts);
  std::cout << "config ok: " << opts.config_path << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"replica placement simulator"};
  app.require_subcommand(1);

  CommonOpts run_opts, sweep_opts, validate_opts;
  std::string report_dir;

  CLI::App* run = app.add_subcommand("run", "simulate one seed, all degrees");
  add_common(run, run_opts);
  CLI::App* sweep = app.add_subcommand("sweep", "simulate each seed x degree");
  add_common(sweep, sweep_opts);
  CLI::App* report =
      app.add_subcommand("report", "re-aggregate per-slot CSVs into a summary");
  report->add_option("results_dir", report_dir, "directory with perslot_*.csv")
      ->required();
  CLI::App* validate =
      app.add_subcommand("validate", "parse and check a config file");
  add_common(validate, validate_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return cmd_run(run_opts);
    if (sweep->parsed()) return cmd_sweep(sweep_opts);
    if (report->parsed()) return cmd_report(report_dir);
    if (validate->parsed()) return cmd_validate(validate_opts);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace repsim
