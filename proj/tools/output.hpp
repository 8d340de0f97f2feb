#pragma once

// Locale-independent CSV and JSON emitters for tabular command results.

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "config.hpp"

namespace entrogeo::cli {

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Scalars written as '#' lines after the rows in CSV and as "metadata" in JSON.
  std::vector<std::pair<std::string, Cell>> metadata;
};

struct CommandResult {
  std::string command;
  Table table;
  bool passed = true;  ///< verify only
};

/// Shortest general-format rendering with the given significant digits.
[[nodiscard]] std::string format_number(double value, int precision);
/// The double nearest to format_number(value, precision).
[[nodiscard]] double round_to_precision(double value, int precision);

void write_csv(std::ostream& out, const Table& table, int precision);
[[nodiscard]] nlohmann::json to_json_document(const CommandResult& result, const RunConfig& config);
void write_result(std::ostream& out, const CommandResult& result, const RunConfig& config);

inline constexpr int kSchemaVersion = 1;

}  // namespace entrogeo::cli
