// circlecs: figure tables and verification reports for coherent states on the circle.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "circlecs/cli/run.hpp"
#include "circlecs/errors.hpp"

namespace {

using namespace circlecs;
using namespace circlecs::cli;

int report_failure(const RunResult& r) {
  for (const auto& c : r.checks) {
    if (c.pass) continue;
    std::cerr << "circlecs: check '" << c.name << "' failed: value " << format_double(c.value)
              << " vs limit " << format_double(c.limit);
    if (c.row >= 0 && static_cast<std::size_t>(c.row) < r.table.rows.size())
      std::cerr << " at " << r.table.columns.front() << " = "
                << format_double(r.table.rows[static_cast<std::size_t>(c.row)].front());
    std::cerr << '\n';
  }
  return 2;
}

int recheck(const RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  RunResult r;
  double tol = cfg.tol.value_or(default_tolerance(cfg.command));
  if (cfg.format == Format::json) {
    const auto j = nlohmann::json::parse(in);
    r.table = table_from_json(j);
    if (!cfg.tol && j.contains("config") && j["config"].contains("tol")) tol = j["config"]["tol"].get<double>();
  } else {
    r.table = read_csv(in);
  }
  r.checks = evaluate_checks(cfg.command, r.table, tol);
  for (const auto& c : r.checks)
    std::cout << c.name << ' ' << (c.pass ? "PASS" : "FAIL") << ' ' << format_double(c.value) << '\n';
  return r.passed() ? 0 : report_failure(r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent states on the circle: figure tables and verification reports"};
  app.set_version_flag("--version", "circlecs 1.0.0");

  std::string command, grid, format = "csv", sector = "boson", recheck_path;
  RunConfig cfg;
  double alpha = 0, a = 0, omega = 0, hbar = 0, tol = 0;

  app.add_option("command", command,
                 "density | angle | momentum | uncertainty | overlap | unity | torus | kowalski")
      ->required();
  auto* o_alpha = app.add_option("--alpha", alpha, "dimensionless parameter a²ω/(2ℏ); sets ℏ = 1, a = 2π");
  auto* o_a = app.add_option("--a", a, "circle length (default 2π)");
  auto* o_omega = app.add_option("--omega", omega, "width of the fiducial Gaussian");
  auto* o_hbar = app.add_option("--hbar", hbar, "Planck constant (default 1)");
  app.add_option("--k", cfg.k, "quasimomentum in [0, 2π/a)");
  app.add_option("--grid", grid, "sweep as var:start:stop:count");
  app.add_option("--out", cfg.out, "output path (default: standard output)");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  auto* o_tol = app.add_option("--tol", tol, "tolerance of the internal checks");
  app.add_option("--v", cfg.v, "reduced momentum (density)");
  app.add_option("--q", cfg.q, "position label of the bra (overlap)");
  app.add_option("--p", cfg.p, "momentum label of the bra (overlap)");
  app.add_option("--nmax", cfg.nmax, "basis truncation |n| <= nmax (unity)");
  app.add_option("--g12", cfg.g12, "cosine of the lattice angle (torus)");
  app.add_option("--sector", sector, "boson | fermion (kowalski)")->check(CLI::IsMember({"boson", "fermion"}));
  app.add_option("--l", cfg.l, "l in ξ = e^{-l+iφ} (kowalski)");
  app.add_option("--phi", cfg.phi, "φ in ξ = e^{-l+iφ} (kowalski)");
  app.add_option("--recheck", recheck_path, "re-evaluate the checks on a previously written table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "circlecs: " << e.what() << '\n';
    return 1;
  }

  try {
    const auto cmd = parse_command(command);
    if (!cmd) throw InvalidArgument("unknown command '" + command + "'");
    cfg.command = *cmd;
    if (*o_alpha) cfg.alpha = alpha;
    if (*o_a) cfg.a = a;
    if (*o_omega) cfg.omega = omega;
    if (*o_hbar) cfg.hbar = hbar;
    if (*o_tol) cfg.tol = tol;
    if (!grid.empty()) cfg.grid = parse_grid(grid);
    cfg.format = format == "json" ? Format::json : Format::csv;
    cfg.sector = sector == "fermion" ? Sector::fermion : Sector::boson;

    if (!recheck_path.empty()) return recheck(cfg, recheck_path);

    const RunResult r = run(cfg);
    const std::string text = render(cfg, r);
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(cfg.out, std::ios::binary);
      if (!out) throw InvalidArgument("cannot write '" + cfg.out + "'");
      out << text;
    }
    return r.passed() ? 0 : report_failure(r);
  } catch (const circlecs::InvalidArgument& e) {
    std::cerr << "circlecs: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "circlecs: " << e.what() << '\n';
    return 1;
  }
}
