#pragma once

// Command execution for the command-line tool: each command produces a table
// (figure data or a verification report) and a list of checks evaluated on it.

#include <optional>
#include <string>
#include <vector>

#include "circlecs/cli/table.hpp"
#include "circlecs/compat.hpp"

namespace circlecs::cli {

enum class Command { density, angle, momentum, uncertainty, overlap, unity, torus, kowalski };
enum class Format { csv, json };

std::optional<Command> parse_command(const std::string& name);
std::string command_name(Command c);

struct Grid {
  std::string var;
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
};

/// "var:start:stop:count"; throws InvalidArgument on malformed input.
Grid parse_grid(const std::string& spec);

struct RunConfig {
  Command command = Command::uncertainty;
  std::optional<double> alpha;
  std::optional<double> a;
  std::optional<double> omega;
  std::optional<double> hbar;
  double k = 0.0;
  std::optional<Grid> grid;
  std::string out;
  Format format = Format::csv;
  std::optional<double> tol;
  // Command-specific parameters.
  double v = 0.0;
  double q = 0.0;
  double p = 0.0;
  int nmax = 5;
  double g12 = 0.5;
  Sector sector = Sector::boson;
  double l = 0.0;
  double phi = 0.0;
};

/// Throws InvalidArgument if the configuration is inconsistent.
void validate(const RunConfig& cfg);

/// Tolerance used when --tol is not given.
double default_tolerance(Command c);

struct RunResult {
  Table table;
  std::vector<Check> checks;
  nlohmann::json config;

  bool passed() const;
};

/// Validates, computes the table and evaluates the checks.
RunResult run(const RunConfig& cfg);

/// The checks of a command, evaluated from the table alone. Re-reading an
/// emitted table and calling this reproduces the original verdict.
std::vector<Check> evaluate_checks(Command c, const Table& t, double tol);

/// Serialized table in the configured format.
std::string render(const RunConfig& cfg, const RunResult& r);

}  // namespace circlecs::cli
