#pragma once

// Numeric tables emitted by the command-line tool, their CSV/JSON encodings and
// the pass/fail checks evaluated on them.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace circlecs::cli {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Index of a column; throws InvalidArgument if absent.
  std::size_t column(const std::string& name) const;
  std::vector<double> values(const std::string& name) const;
};

struct Check {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool pass = false;
  /// Row that decided the check (the worst one), or -1.
  long row = -1;
};

/// Header row, then one line per row with 17 significant digits.
void write_csv(std::ostream& os, const Table& t);
Table read_csv(std::istream& is);

/// {"config": ..., "columns": [...], "rows": [[...], ...], "checks": [...]}
nlohmann::json to_json(const nlohmann::json& config, const Table& t, const std::vector<Check>& checks);
Table table_from_json(const nlohmann::json& j);

std::string format_double(double x);

}  // namespace circlecs::cli
