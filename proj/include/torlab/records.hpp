#pragma once

// Experiment output: fixed-schema rows written as CSV (17 significant digits)
// or JSON, atomically (temp file then rename).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace torlab {

inline constexpr int kSchemaVersion = 1;

using Field = std::variant<std::int64_t, double, std::string>;

struct ExperimentRecord {
  std::vector<Field> fields;  // aligned with the experiment's column list
};

struct RecordTable {
  std::vector<std::string> columns;
  std::vector<ExperimentRecord> rows;
};

inline std::string field_to_string(const Field& f) {
  if (std::holds_alternative<std::int64_t>(f))
    return std::to_string(std::get<std::int64_t>(f));
  if (std::holds_alternative<double>(f)) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(f));
    return buf;
  }
  return std::get<std::string>(f);
}

inline std::string to_csv(const RecordTable& table) {
  std::ostringstream out;
  out << "schema_version";
  for (const auto& c : table.columns) out << ',' << c;
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.fields.size() != table.columns.size())
      throw std::logic_error("to_csv: row width does not match header");
    out << kSchemaVersion;
    for (const auto& f : row.fields) out << ',' << field_to_string(f);
    out << '\n';
  }
  return out.str();
}

inline std::string to_json(const RecordTable& table) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    if (row.fields.size() != table.columns.size())
      throw std::logic_error("to_json: row width does not match header");
    nlohmann::ordered_json obj;
    obj["schema_version"] = kSchemaVersion;
    for (std::size_t i = 0; i < row.fields.size(); ++i) {
      const auto& f = row.fields[i];
      if (std::holds_alternative<std::int64_t>(f))
        obj[table.columns[i]] = std::get<std::int64_t>(f);
      else if (std::holds_alternative<double>(f))
        // serialized from the 17-digit text so CSV and JSON agree byte-wise
        obj[table.columns[i]] = nlohmann::ordered_json::parse(field_to_string(f));
      else
        obj[table.columns[i]] = std::get<std::string>(f);
    }
    doc.push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_atomic: cannot open " + tmp);
    out << content;
    if (!out) throw std::runtime_error("write_atomic: write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace torlab
