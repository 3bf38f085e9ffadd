#include "qbs/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qbs::cli {

Json matrix_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(Json::array({v(i).real(), v(i).imag()}));
  return out;
}

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // Keep the value typed as a float when read back.
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

// Small matrices and number pairs read better on one line.
bool is_flat(const Json& j) {
  return std::all_of(j.begin(), j.end(), [](const Json& e) {
    return e.is_primitive() || (e.is_array() && e.size() == 2 && e[0].is_number());
  });
}

void write(std::string& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(key).dump() + ": ";
        write(out, value, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      if (is_flat(j)) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write(out, j[i], indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        write(out, j[i], indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    default:
      out += j.dump();
  }
}

std::string csv_cell(const Json& j) {
  if (j.is_number_float()) {
    const std::string s = format_double(j.get<double>());
    return s == "null" ? "" : s;
  }
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    return quoted + "\"";
  }
  return j.dump();
}

}  // namespace

std::string to_json_text(const Json& doc) {
  std::string out;
  write(out, doc, 0);
  out += "\n";
  return out;
}

std::string render_json(const RunReport& report) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["version"] = report.version;
  doc["command"] = report.command;
  doc["seed"] = report.seed ? Json(*report.seed) : Json(nullptr);
  doc["tolerances"] = report.tolerances;
  if (!report.parameters.empty()) doc["parameters"] = report.parameters;
  doc["results"] = report.results;
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    violations.push_back(
        {{"check", v.check}, {"item", v.item}, {"value", v.value}, {"tolerance", v.tolerance}});
  }
  doc["violations"] = violations;
  doc["passed"] = report.passed();
  if (report.wall_time_s) doc["wall_time_s"] = *report.wall_time_s;
  return to_json_text(doc);
}

std::string render_csv(const RunReport& report) {
  std::vector<std::string> columns;
  for (const auto& item : report.results) {
    for (const auto& [key, value] : item.items()) {
      if (!value.is_primitive() || value.is_null()) continue;
      if (std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
    }
  }
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) out += (c ? "," : "") + columns[c];
  out += "\n";
  for (const auto& item : report.results) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out += ",";
      const auto it = item.find(columns[c]);
      if (it != item.end() && it->is_primitive() && !it->is_null()) out += csv_cell(*it);
    }
    out += "\n";
  }
  return out;
}

}  // namespace qbs::cli
