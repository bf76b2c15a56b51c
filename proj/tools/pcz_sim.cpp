// Simulation driver: run, compare, validate and oracle subcommands over a
// JSON experiment config.
//
// Exit codes: 0 success, 1 config error, 2 runtime invariant violation.

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pcz/harness.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitInvariant = 2;

int run(const std::string& path, bool compare) {
  auto config = pcz::load_config(path, &std::cerr);
  if (compare && config.policies.size() < 2)
    throw pcz::ConfigError("compare needs at least two policies in 'policies'");
  const auto result = pcz::run_experiment(config, &std::cerr);
  if (compare) std::cout << pcz::comparison_table(result);
  std::cerr << "[done] wrote " << result.files.size() << " files to " << config.output_dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pareto contextual zooming simulations"};
  app.require_subcommand(1);
  std::string config_path;

  auto* run_cmd = app.add_subcommand("run", "Run every policy and run in the config, write CSVs");
  run_cmd->add_option("config", config_path, "Experiment config (JSON)")->required();
  auto* compare_cmd = app.add_subcommand("compare", "Run and print final regret per policy");
  compare_cmd->add_option("config", config_path, "Experiment config (JSON)")->required();
  auto* validate_cmd = app.add_subcommand("validate", "Check a config and print it with defaults resolved");
  validate_cmd->add_option("config", config_path, "Experiment config (JSON)")->required();
  auto* oracle_cmd = app.add_subcommand("oracle", "Write the environment's grid means, gaps and fronts");
  oracle_cmd->add_option("config", config_path, "Experiment config (JSON)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return run(config_path, false);
    if (*compare_cmd) return run(config_path, true);
    if (*validate_cmd) {
      const auto config = pcz::load_config(config_path, &std::cerr);
      std::cout << pcz::resolved_json(config).dump(2) << "\n";
      return 0;
    }
    if (*oracle_cmd) {
      const auto config = pcz::load_config(config_path, &std::cerr);
      std::cout << pcz::write_oracle_table(config).string() << "\n";
      return 0;
    }
  } catch (const pcz::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const pcz::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  }
  return 0;
}
