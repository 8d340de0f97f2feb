#include "output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace entrogeo::cli {

namespace {

std::string render(const Cell& cell, int precision) {
  return std::visit(
      [precision](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) return format_number(v, precision);
        else if constexpr (std::is_same_v<T, long long>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else return v;
      },
      cell);
}

nlohmann::json cell_json(const Cell& cell, int precision) {
  return std::visit(
      [precision](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          return round_to_precision(v, precision);
        } else {
          return v;
        }
      },
      cell);
}

std::string quote_if_needed(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_number(double value, int precision) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  std::array<char, 64> buffer{};
  const auto [end, ec] =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value, std::chars_format::general, precision);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buffer.data(), end);
}

double round_to_precision(double value, int precision) {
  const std::string text = format_number(value, precision);
  double out = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

void write_csv(std::ostream& out, const Table& table, int precision) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << quote_if_needed(render(row[i], precision));
    }
    out << '\n';
  }
  for (const auto& [key, value] : table.metadata) {
    out << "# " << key << '=' << render(value, precision) << '\n';
  }
}

nlohmann::json to_json_document(const CommandResult& result, const RunConfig& config) {
  const int precision = config.output.precision;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : result.table.rows) {
    nlohmann::json record = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) record[result.table.columns[i]] = cell_json(row[i], precision);
    rows.push_back(std::move(record));
  }
  nlohmann::json metadata = nlohmann::json::object();
  for (const auto& [key, value] : result.table.metadata) metadata[key] = cell_json(value, precision);

  nlohmann::json document{
      {"schema_version", kSchemaVersion},
      {"command", result.command},
      {"config", to_json(config)},
      {"columns", result.table.columns},
      {"rows", std::move(rows)},
      {"metadata", std::move(metadata)},
  };
  if (result.command == "verify") document["passed"] = result.passed;
  return document;
}

void write_result(std::ostream& out, const CommandResult& result, const RunConfig& config) {
  if (config.output.format == "json") {
    out << to_json_document(result, config).dump(2) << '\n';
  } else {
    write_csv(out, result.table, config.output.precision);
  }
}

}  // namespace entrogeo::cli
