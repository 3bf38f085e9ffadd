#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbs/market.hpp"
#include "qbs/pricing.hpp"

namespace qbs::cli {

inline constexpr int kSchemaVersion = 1;

/// Configuration problem; exits with status 2. `path()` names the offending
/// field (e.g. "model.ops.S"); `defect()` is the measured violation, 0 when
/// not applicable.
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& message, double defect = 0.0);
  const std::string& path() const noexcept { return path_; }
  double defect() const noexcept { return defect_; }

 private:
  std::string path_;
  double defect_;
};

/// Named tolerances; every run echoes the full table into its report.
class Tolerances {
 public:
  Tolerances();
  double get(const std::string& name) const;
  /// Throws ConfigError for unknown names or non-positive values.
  void set(const std::string& name, double value);
  const std::map<std::string, double>& values() const noexcept { return values_; }
  friend bool operator==(const Tolerances&, const Tolerances&) = default;

 private:
  std::map<std::string, double> values_;
};

struct GridSettings {
  std::vector<double> t;           // empty: {model.T}
  std::vector<HermitianMatrix> z;  // empty: {z0 = log(X) - log(K)}
  friend bool operator==(const GridSettings&, const GridSettings&) = default;
};

struct ItoCheckSettings {
  std::vector<int> dims{2, 3, 4};
  int k_max = 6;
  int trials = 100;
  friend bool operator==(const ItoCheckSettings&, const ItoCheckSettings&) = default;
};

struct TerminalSettings {
  std::vector<HermitianMatrix> zT;  // empty: {z0}
  double t_small = 1e-8;
  double gap = 0.1;
  friend bool operator==(const TerminalSettings&, const TerminalSettings&) = default;
};

struct HedgeSettings {
  std::vector<double> times;            // empty: {T / 2}
  std::vector<HermitianMatrix> stock;   // empty: {X}
  DeltaConvention convention = DeltaConvention::log_price;
  friend bool operator==(const HedgeSettings&, const HedgeSettings&) = default;
};

struct ClassicalSettings {
  std::vector<double> x{1.0};
  std::vector<double> t{1.0};
  double strike = 1.0;
  double r = 0.05;
  double sigma = 1.0;
  friend bool operator==(const ClassicalSettings&, const ClassicalSettings&) = default;
};

struct LindbladSettings {
  std::vector<double> times{1.0};
  std::optional<int> steps;  // default max(1000 t, 100)
  friend bool operator==(const LindbladSettings&, const LindbladSettings&) = default;
};

struct ReplicateSettings {
  double x0 = 1.0;
  double strike = 1.0;
  double r = 0.05;
  double T = 1.0;
  int steps = 1000;
  int paths = 10000;
  double sigma = 1.0;
  friend bool operator==(const ReplicateSettings&, const ReplicateSettings&) = default;
};

enum class OutputFormat { json, csv };

struct RunConfig {
  explicit RunConfig(MarketModel m) : model(std::move(m)) {}

  int schema_version = kSchemaVersion;
  MarketModel model;
  std::optional<ComplexVector> state;
  GridSettings grid;
  ItoCheckSettings ito_check;
  TerminalSettings terminal;
  HedgeSettings hedge;
  ClassicalSettings classical;
  LindbladSettings lindblad;
  ReplicateSettings replicate;
  std::optional<std::uint64_t> seed;
  Tolerances tolerances;
  OutputFormat output = OutputFormat::json;
};

bool operator==(const RunConfig& a, const RunConfig& b);

/// Parses and fully validates a JSON configuration document. Throws
/// ConfigError naming the field path on any syntax or invariant violation.
RunConfig parse_config(std::string_view text);

/// Canonical JSON document that parses back to an equal RunConfig.
std::string serialize_config(const RunConfig& config);

}  // namespace qbs::cli
