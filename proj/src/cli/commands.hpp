#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "config.hpp"

namespace diracgauge::cli {

inline constexpr const char* kSchemaVersion = "1.0";

enum ExitCode { kOk = 0, kConfigError = 2, kNotAdmissible = 3, kNumericalFailure = 4 };

struct Outcome {
  Json report;
  int exit_code = kOk;
  /// Empty on success; otherwise the message for standard error.
  std::string diagnostic;
};

const std::vector<std::string>& command_names();

/// Runs one subcommand on a parsed config. Never throws: failures become an
/// exit code, a diagnostic and a report holding whatever was computed before
/// the failure.
Outcome run_command(const std::string& command, const Json& config, double tol_scale,
                    std::uint64_t seed);

/// Reads a JSON config file; ConfigError on I/O or syntax problems.
Json load_config(const std::string& path);

}  // namespace diracgauge::cli
