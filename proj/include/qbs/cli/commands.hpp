#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qbs/cli/config.hpp"
#include "qbs/cli/report.hpp"

namespace qbs::cli {

inline constexpr const char* kVersion = "qbs 0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // computation error inside a module
inline constexpr int kExitConfig = 2;   // syntax, invariant or usage error
inline constexpr int kExitViolation = 3;

const std::vector<std::string>& command_names();

struct RunOptions {
  /// Adds wall_time_s to the report, which makes it non-reproducible.
  bool timing = false;
};

/// Executes one command. Throws ConfigError for an unknown command, a missing
/// seed on a stochastic command, or grid points outside a check's domain.
RunReport run(const RunConfig& config, std::string_view command, const RunOptions& options = {});

inline int exit_code(const RunReport& report) {
  return report.passed() ? kExitOk : kExitViolation;
}

}  // namespace qbs::cli
