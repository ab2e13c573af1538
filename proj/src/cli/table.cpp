#include "circlecs/cli/table.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "circlecs/errors.hpp"

namespace circlecs::cli {

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw InvalidArgument("table has no column '" + name + "'");
}

std::vector<double> Table::values(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.at(c));
  return out;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_double(r[i]);
    os << '\n';
  }
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

Table read_csv(std::istream& is) {
  Table t;
  std::string line;
  if (!std::getline(is, line)) throw InvalidArgument("csv: missing header row");
  t.columns = split(line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != t.columns.size()) throw InvalidArgument("csv: ragged row");
    std::vector<double> row;
    for (const auto& c : cells) {
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(c, &used);
      } catch (const std::exception&) {
        throw InvalidArgument("csv: not a number: '" + c + "'");
      }
      if (used != c.size()) throw InvalidArgument("csv: not a number: '" + c + "'");
      row.push_back(x);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

nlohmann::json to_json(const nlohmann::json& config, const Table& t, const std::vector<Check>& checks) {
  nlohmann::json j;
  j["config"] = config;
  j["columns"] = t.columns;
  j["rows"] = t.rows;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name}, {"value", c.value}, {"limit", c.limit}, {"pass", c.pass}, {"row", c.row}});
  return j;
}

Table table_from_json(const nlohmann::json& j) {
  Table t;
  t.columns = j.at("columns").get<std::vector<std::string>>();
  t.rows = j.at("rows").get<std::vector<std::vector<double>>>();
  return t;
}

}  // namespace circlecs::cli
