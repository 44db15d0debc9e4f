// smqt: command line front end.
//   smqt run <config> [--scenario NAME] [--out DIR] [--steps N] [--dt X]
//                     [--seed N]
//   smqt limits
// Exit codes: 0 success, 1 configuration error, 2 numerical error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "smqt/config.hpp"
#include "smqt/errors.hpp"
#include "smqt/io.hpp"
#include "smqt/limits.hpp"
#include "smqt/runner.hpp"

namespace {

int do_run(const std::string& config_path, const std::string& scenario_name,
           const std::string& out_dir, const std::optional<long>& steps,
           const std::optional<double>& dt,
           const std::optional<unsigned long>& seed) {
  namespace fs = std::filesystem;

  std::optional<smqt::Scenario> scenario_override;
  if (!scenario_name.empty()) {
    scenario_override = smqt::scenario_from_string(scenario_name);
    if (!scenario_override)
      throw smqt::ConfigError("unknown scenario '" + scenario_name + "'");
  }

  smqt::RunConfig cfg = smqt::parse_config(config_path, scenario_override);
  if (steps) cfg.n_steps = *steps;
  if (dt) cfg.dt = *dt;
  if (seed) cfg.seed = *seed;
  smqt::validate_config(cfg);

  fs::create_directories(out_dir);
  const fs::path base(out_dir);
  smqt::write_config(cfg, (base / "resolved_config.cfg").string());

  std::ofstream obs(base / "observables.csv");
  if (!obs)
    throw smqt::ConfigError("cannot write " +
                            (base / "observables.csv").string());
  obs << smqt::observables_header() << '\n';
  long n_rows = 0;
  auto on_row = [&](const smqt::ObservableRow& row) {
    obs << smqt::format_observable_row(row, cfg.precision) << '\n'
        << std::flush;
    ++n_rows;
  };

  const smqt::SnapshotSeries series = smqt::run(cfg, on_row);

  const smqt::PhaseSpaceGrid grid = smqt::make_grid(cfg.grid);
  for (std::size_t k = 0; k < series.snapshots.size(); ++k) {
    char name[48];
    std::snprintf(name, sizeof(name), "snapshot_%03zu.csv", k);
    smqt::write_snapshot(series.snapshots[k], grid, (base / name).string(),
                         cfg.precision);
  }

  std::cout << "scenario " << smqt::to_string(cfg.scenario) << ": " << n_rows
            << " observable rows";
  if (!series.snapshots.empty())
    std::cout << ", " << series.snapshots.size() << " snapshots";
  std::cout << " -> " << out_dir << std::endl;
  return 0;
}

int do_limits() {
  const auto results = smqt::run_limit_suite(&std::cout);
  int failures = 0;
  for (const auto& r : results)
    if (!r.pass) ++failures;
  std::cout << (failures == 0 ? "all limits recovered"
                              : std::to_string(failures) + " limit(s) failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic phase-space simulator for coupled charge and "
               "spin-magnetization transport in a 1-D channel"};
  app.require_subcommand(1);

  std::string config_path, scenario_name, out_dir = ".";
  long steps_value = 0;
  double dt_value = 0.0;
  unsigned long seed_value = 0;

  CLI::App* run_cmd =
      app.add_subcommand("run", "integrate a configured simulation");
  run_cmd->add_option("config", config_path, "config file (key = value)")
      ->required();
  run_cmd->add_option("--scenario", scenario_name,
                      "scenario preset overriding the config's run.scenario");
  run_cmd->add_option("--out", out_dir, "output directory (default .)");
  CLI::Option* steps_opt =
      run_cmd->add_option("--steps", steps_value, "override run.n_steps");
  CLI::Option* dt_opt =
      run_cmd->add_option("--dt", dt_value, "override run.dt");
  CLI::Option* seed_opt = run_cmd->add_option(
      "--seed", seed_value, "override run.seed (reserved; runs are "
                            "deterministic)");

  CLI::App* limits_cmd = app.add_subcommand(
      "limits", "run the limit-recovery suite and report pass/fail");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run_cmd->parsed()) {
      std::optional<long> steps;
      std::optional<double> dt;
      std::optional<unsigned long> seed;
      if (steps_opt->count() > 0) steps = steps_value;
      if (dt_opt->count() > 0) dt = dt_value;
      if (seed_opt->count() > 0) seed = seed_value;
      return do_run(config_path, scenario_name, out_dir, steps, dt, seed);
    }
    if (limits_cmd->parsed()) return do_limits();
  } catch (const smqt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return 1;
  } catch (const smqt::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  return 0;
}
