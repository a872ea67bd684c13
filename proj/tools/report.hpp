#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

namespace bgeom::cli {

using Cell = std::variant<std::monostate, bool, std::int64_t, double, std::string>;
using Row = std::vector<Cell>;

/// A command's output: one table plus a summary. Rows stay in grid order.
struct Report {
  std::vector<std::string> columns;
  std::vector<Row> rows;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<std::pair<std::string, double>> summary;
  int failures = 0;
  int flagged = 0;

  void add_summary(std::string key, double value) { summary.emplace_back(std::move(key), value); }
};

/// Header plus rows; doubles with 17 significant digits.
std::string to_csv(const Report& r);
/// {config, rows, summary}; non-finite doubles become null.
std::string to_json(const Report& r);

}  // namespace bgeom::cli
