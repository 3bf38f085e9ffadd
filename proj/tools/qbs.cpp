// qbs <command> --config <path> [--csv] [--seed N] [--tol NAME=VALUE]... [--timing]
//
// Exit status: 0 success, 1 computation error, 2 configuration or usage
// error, 3 a checked invariant failed. The report goes to stdout, diagnostics
// to stderr.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qbs/cli/commands.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qbs::cli::ConfigError("--config", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void apply_tolerance(qbs::cli::Tolerances& tols, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw qbs::cli::ConfigError("--tol", "expected NAME=VALUE, got " + spec);
  const std::string name = spec.substr(0, eq);
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(spec.substr(eq + 1), &used);
    if (used != spec.size() - eq - 1) throw std::invalid_argument(spec);
  } catch (const std::logic_error&) {
    throw qbs::cli::ConfigError("--tol " + name, "not a number: " + spec.substr(eq + 1));
  }
  tols.set(name, value);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace qbs::cli;

  CLI::App app{"Quantum Black-Scholes batch tool"};
  app.set_version_flag("--version", kVersion);
  std::string command;
  std::string config_path;
  bool csv = false;
  bool timing = false;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> tolerances;

  std::string names;
  for (const auto& n : command_names()) names += (names.empty() ? "" : ", ") + n;
  app.add_option("command", command, "One of: " + names)->required();
  app.add_option("--config", config_path, "JSON configuration file")->required();
  app.add_flag("--csv", csv, "Write scalar result columns as CSV instead of JSON");
  app.add_option("--seed", seed, "Seed for stochastic commands (overrides the config)");
  app.add_option("--tol", tolerances, "Override a tolerance, NAME=VALUE");
  app.add_flag("--timing", timing, "Include wall time in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    RunConfig cfg = parse_config(read_file(config_path));
    if (seed) cfg.seed = seed;
    for (const auto& spec : tolerances) apply_tolerance(cfg.tolerances, spec);
    if (csv) cfg.output = OutputFormat::csv;

    const RunReport report = run(cfg, command, RunOptions{timing});
    std::cout << (cfg.output == OutputFormat::csv ? render_csv(report) : render_json(report));
    for (const auto& v : report.violations) {
      std::cerr << "violation: " << v.check << " at " << v.item << ": " << v.value << " > "
                << v.tolerance << "\n";
    }
    return exit_code(report);
  } catch (const ConfigError& e) {
    std::cerr << e.what();
    if (e.defect() > 0.0) std::cerr << " (defect " << e.defect() << ")";
    std::cerr << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << command << ": " << e.what() << "\n";
    return kExitFailure;
  }
}
