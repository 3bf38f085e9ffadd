#pragma once

// Report documents and their canonical text forms. Doubles are printed with
// 17 significant digits so every value round-trips bit-exactly; objects keep
// insertion order so identical runs produce byte-identical output.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qbs/cli/config.hpp"

namespace qbs::cli {

using Json = nlohmann::ordered_json;

/// Row-major nested array of [re, im] pairs.
Json matrix_json(const ComplexMatrix& m);
/// Array of [re, im] pairs.
Json vector_json(const ComplexVector& v);

/// Indented JSON with %.17g doubles; non-finite doubles become null.
std::string to_json_text(const Json& doc);

/// One failed check: which check, on which item, measured value and bound.
struct Violation {
  std::string check;
  std::string item;
  double value = 0.0;
  double tolerance = 0.0;
};

struct RunReport {
  std::string command;
  std::string version;
  std::optional<std::uint64_t> seed;
  std::map<std::string, double> tolerances;
  /// Extra run-level fields (e.g. truncation degree), echoed verbatim.
  Json parameters = Json::object();
  /// One object per requested item, in grid order.
  std::vector<Json> results;
  std::vector<Violation> violations;
  std::optional<double> wall_time_s;

  bool passed() const noexcept { return violations.empty(); }
};

std::string render_json(const RunReport& report);

/// Header plus one row per result item. Columns are the scalar (number,
/// string, boolean) fields in first-seen order; matrices are omitted and
/// missing fields are left empty.
std::string render_csv(const RunReport& report);

}  // namespace qbs::cli
