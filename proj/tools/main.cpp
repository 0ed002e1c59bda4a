#include <cstdint>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace cli = diracgauge::cli;

int main(int argc, char** argv) {
  CLI::App app{"Gamma-field gauge fixing and Dirac operator equivalence checks"};
  std::string config_path;
  std::string out_path;
  double tol_scale = 1.0;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_path, "Write the report here instead of standard output");
  app.add_option("--tol-scale", tol_scale, "Multiply every tolerance by this factor");
  app.add_option("--seed", seed, "Seed for sampled points");
  app.require_subcommand(1);
  for (const std::string& name : cli::command_names()) app.add_subcommand(name)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kConfigError;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  cli::Json config;
  try {
    config = cli::load_config(config_path);
  } catch (const cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kConfigError;
  }

  const cli::Outcome outcome = cli::run_command(command, config, tol_scale, seed);
  if (!outcome.diagnostic.empty()) std::cerr << "error: " << outcome.diagnostic << '\n';

  const std::string body = outcome.report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(out_path);
    if (!(out << body)) {
      std::cerr << "error: cannot write report to '" << out_path << "'\n";
      return cli::kConfigError;
    }
  }
  return outcome.exit_code;
}
