#include "circlecs/cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Core>

#include "circlecs/circle_cs.hpp"
#include "circlecs/errors.hpp"
#include "circlecs/numerics.hpp"
#include "circlecs/observables.hpp"
#include "circlecs/torus_cs.hpp"

namespace circlecs::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct CommandInfo {
  Command command;
  const char* name;
  double tol;
  // Allowed sweep variables; the first is the default. Empty: no sweep.
  std::vector<std::string> vars;
};

const std::vector<CommandInfo>& commands() {
  static const std::vector<CommandInfo> table{
      {Command::density, "density", 1e-9, {"u"}},
      {Command::angle, "angle", 1e-9, {"v"}},
      {Command::momentum, "momentum", 1e-10, {"v"}},
      {Command::uncertainty, "uncertainty", 1e-10, {"v"}},
      {Command::overlap, "overlap", 1e-9, {"q", "p"}},
      {Command::unity, "unity", 1e-6, {}},
      {Command::torus, "torus", 1e-8, {}},
      {Command::kowalski, "kowalski", 1e-12, {}},
  };
  return table;
}

const CommandInfo& info(Command c) {
  for (const auto& i : commands())
    if (i.command == c) return i;
  throw InvalidArgument("unknown command");
}

double relative(double x, double ref) {
  if (x == ref) return 0.0;
  return std::abs(x - ref) / std::abs(ref);
}

CircleGeometry circle_geometry(const RunConfig& cfg) {
  if (cfg.alpha) return CircleGeometry::from_alpha(*cfg.alpha, 1.0, 2.0 * kPi, cfg.k);
  return CircleGeometry(cfg.a.value_or(2.0 * kPi), cfg.k, *cfg.omega, cfg.hbar.value_or(1.0));
}

std::vector<double> grid_points(const RunConfig& cfg, const CircleGeometry* geom) {
  if (cfg.grid) return linspace(cfg.grid->start, cfg.grid->stop, cfg.grid->count);
  switch (cfg.command) {
    case Command::density: return linspace(0.0, 1.0, 101);
    case Command::angle:
    case Command::momentum: return linspace(0.0, 1.0, 101);
    case Command::uncertainty: return linspace(0.0, 0.5, 51);
    case Command::overlap: return linspace(0.0, geom->a(), 41);
    default: return {};
  }
}

std::string grid_var(const RunConfig& cfg) {
  return cfg.grid ? cfg.grid->var : info(cfg.command).vars.front();
}

Table density_table(const RunConfig& cfg) {
  const auto geom = circle_geometry(cfg);
  const auto us = grid_points(cfg, &geom);
  const double a = geom.a(), alpha = geom.alpha();
  const PhasePoint label{0.0, geom.momentum_from_reduced(cfg.v)};
  const double norm = cs_norm_sq(label, geom);
  Table t{{"u", "density", "density_wavefunction", "deviation"}, {}};
  t.rows.resize(us.size());
  parallel_for(us.size(), [&](std::size_t i) {
    const double u = us[i];
    const double d = a * probability_density(u - 0.5, cfg.v, alpha, a);
    const double w = a * std::norm(cs_wavefunction(label, a * (u - 0.5), geom)) / norm;
    t.rows[i] = {u, d, w, relative(d, w)};
  });
  return t;
}

Table angle_table(const RunConfig& cfg) {
  const auto geom = circle_geometry(cfg);
  const auto vs = grid_points(cfg, &geom);
  const double alpha = geom.alpha();
  Table t{{"v", "abs_E", "abs_E_overlap", "deviation"}, {}};
  t.rows.resize(vs.size());
  parallel_for(vs.size(), [&](std::size_t i) {
    const double v = vs[i];
    const double log_e = log_abs_expect_angle(v, alpha);
    // E|q,p;k⟩ = e^{iπq/a}|q, p + 2πℏ/a; k⟩, at q = 0.
    const PhasePoint l{0.0, geom.momentum_from_reduced(v)};
    const PhasePoint shifted{0.0, l.p + geom.momentum_quantum()};
    const auto ov = cs_overlap_scaled(l, shifted, geom);
    const double log_o = ov.log_scale + std::log(std::abs(ov.mantissa)) - std::log(cs_norm_sq(l, geom));
    t.rows[i] = {v, std::exp(log_e), std::exp(log_o), std::abs(std::expm1(log_e - log_o))};
  });
  return t;
}

Table momentum_table(const RunConfig& cfg) {
  const auto geom = circle_geometry(cfg);
  const auto vs = grid_points(cfg, &geom);
  const double unit = geom.momentum_quantum(), kh = geom.k() * geom.hbar();
  Table t{{"v", "momentum", "momentum_series", "deviation"}, {}};
  t.rows.resize(vs.size());
  parallel_for(vs.size(), [&](std::size_t i) {
    const double v = vs[i];
    const double p = geom.momentum_from_reduced(v);
    const double closed = (expect_momentum(p, geom) - kh) / unit;
    const auto st = cs_coefficients({0.0, p}, geom);
    std::vector<double> num, den;
    for (int n = st.n_min; n <= st.n_max(); ++n) {
      const double w = std::norm(st.coeff(n));
      num.push_back(n * w);
      den.push_back(w);
    }
    // ℏ(2πn/a + k) - kℏ in units of 2πℏ/a is n.
    const double series = pairwise_sum(std::span<const double>(num)) / pairwise_sum(std::span<const double>(den));
    t.rows[i] = {v, closed, series, std::abs(closed - series) / std::max(1.0, std::abs(series))};
  });
  return t;
}

Table uncertainty_table(const RunConfig& cfg) {
  const auto geom = circle_geometry(cfg);
  const auto vs = grid_points(cfg, &geom);
  Table t{{"v", "two_delta", "two_delta_composed", "deviation"}, {}};
  t.rows.resize(vs.size());
  parallel_for(vs.size(), [&](std::size_t i) {
    const auto r = uncertainty_report(vs[i], geom);
    t.rows[i] = {vs[i], 2.0 * r.delta_fn, 2.0 * r.delta_fn_composed, uncertainty_route_deviation(r)};
  });
  return t;
}

Table overlap_table(const RunConfig& cfg) {
  const auto geom = circle_geometry(cfg);
  const auto xs = grid_points(cfg, &geom);
  const std::string var = grid_var(cfg);
  const PhasePoint bra = on_circle(cfg.q, cfg.p, geom);
  Table t{{var, "re", "im", "re_series", "im_series", "deviation"}, {}};
  t.rows.resize(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    const PhasePoint ket = var == "q" ? on_circle(xs[i], cfg.p, geom) : on_circle(cfg.q, xs[i], geom);
    const auto closed = cs_overlap(bra, ket, geom);
    const NRange rb = default_n_range(bra, geom), rk = default_n_range(ket, geom);
    const NRange r{std::min(rb.lo, rk.lo), std::max(rb.hi, rk.hi)};
    const auto series = inner_product(cs_coefficients(bra, r, geom), cs_coefficients(ket, r, geom));
    // Normalized by the Cauchy–Schwarz bound.
    const double scale = std::sqrt(cs_norm_sq(bra, geom) * cs_norm_sq(ket, geom));
    t.rows[i] = {xs[i], closed.real(), closed.imag(), series.real(), series.imag(),
                 std::abs(closed - series) / scale};
  });
  return t;
}

Table unity_table(const RunConfig& cfg) {
  const auto geom = circle_geometry(cfg);
  const auto m = verify_resolution_of_unity(geom, cfg.nmax);
  Table t{{"n", "m", "re", "im", "deviation"}, {}};
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const auto x = m(i, j);
      const double target = i == j ? 1.0 : 0.0;
      t.rows.push_back({double(i - cfg.nmax), double(j - cfg.nmax), x.real(), x.imag(),
                        std::abs(x - target)});
    }
  return t;
}

Table torus_table(const RunConfig& cfg) {
  const auto cg = circle_geometry(cfg);
  const double a = cg.a(), w = cg.omega(), h = cg.hbar();
  const auto lat = LatticeSpec::planar(a, a, cfg.g12);
  const TorusGeometry geom(lat, Eigen::Vector2d(cfg.k, cfg.k), w, h);
  // Largest eigenvalue of the planar Gram matrix.
  const double lmax = 1.0 + std::abs(cfg.g12);
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> uq(0.0, a), up(-2.0, 2.0);
  const double pu = 2.0 * kPi * h / a;
  Table t{{"point", "wavefunction_deviation", "overlap_deviation", "norm_deviation"}, {}};
  for (int i = 0; i < 10; ++i) {
    const TorusLabel l1{Eigen::Vector2d(uq(rng), uq(rng)), Eigen::Vector2d(pu * up(rng), pu * up(rng))};
    const TorusLabel l2{Eigen::Vector2d(uq(rng), uq(rng)), Eigen::Vector2d(pu * up(rng), pu * up(rng))};
    const Eigen::VectorXd qp = Eigen::Vector2d(uq(rng), uq(rng));
    // Plane-wave box wide enough for both labels.
    double centre = 0.0;
    for (const auto* l : {&l1, &l2})
      for (int d = 0; d < 2; ++d) centre = std::max(centre, std::abs(l->p(d) / h - cfg.k) * a / (2.0 * kPi));
    const int box = static_cast<int>(std::ceil(centre + 8.0 * std::sqrt(w * h * lmax) * a / (2.0 * kPi * h))) + 4;
    std::complex<double> wf{}, ov{};
    double nn = 0.0;
    for (const auto& m : torus_index_box(2, box)) {
      const auto c1 = torus_coefficient(l1, m, geom), c2 = torus_coefficient(l2, m, geom);
      const Eigen::VectorXd b = torus_wave_vector(m, geom);
      wf += c1 * std::polar(1.0 / std::sqrt(lat.cell_volume()), b.dot(qp));
      ov += std::conj(c2) * c1;
      nn += std::norm(c1);
    }
    const double n1 = torus_norm_sq(l1, geom), n2 = torus_norm_sq(l2, geom);
    const auto wf_closed = torus_cs_wavefunction(l1, qp, geom);
    t.rows.push_back({double(i), std::abs(wf_closed - wf) / std::sqrt(n1 / lat.cell_volume()),
                      std::abs(torus_overlap(l2, l1, geom) - ov) / std::sqrt(n1 * n2), relative(n1, nn)});
  }
  return t;
}

Table kowalski_table(const RunConfig& cfg) {
  const auto r = equivalence_check({cfg.l, cfg.phi, cfg.sector});
  Table t{{"j", "ratio_re", "ratio_im", "deviation", "constant_error"}, {}};
  for (std::size_t i = 0; i < r.j.size(); ++i)
    t.rows.push_back({r.j[i], r.ratios[i].real(), r.ratios[i].imag(),
                      std::abs(r.ratios[i] - r.constant) / std::abs(r.constant), r.constant_error});
  return t;
}

Check max_check(const std::string& name, const Table& t, const std::string& col, double limit) {
  const auto xs = t.values(col);
  Check c{name, 0.0, limit, true, -1};
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (c.row < 0 || xs[i] > c.value || std::isnan(xs[i])) {
      c.value = xs[i];
      c.row = static_cast<long>(i);
      if (std::isnan(xs[i])) break;
    }
  c.pass = !xs.empty() && !std::isnan(c.value) && c.value <= limit;
  return c;
}

Check min_check(const std::string& name, const Table& t, const std::string& col, double limit) {
  const auto xs = t.values(col);
  Check c{name, 0.0, limit, true, -1};
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (c.row < 0 || xs[i] < c.value || std::isnan(xs[i])) {
      c.value = xs[i];
      c.row = static_cast<long>(i);
      if (std::isnan(xs[i])) break;
    }
  c.pass = !xs.empty() && !std::isnan(c.value) && c.value >= limit;
  return c;
}

nlohmann::json config_json(const RunConfig& cfg, double tol) {
  nlohmann::json j;
  j["command"] = command_name(cfg.command);
  auto opt = [&](const char* key, const std::optional<double>& x) {
    if (x) j[key] = *x;
  };
  opt("alpha", cfg.alpha);
  opt("a", cfg.a);
  opt("omega", cfg.omega);
  opt("hbar", cfg.hbar);
  j["k"] = cfg.k;
  if (cfg.grid)
    j["grid"] = {{"var", cfg.grid->var}, {"start", cfg.grid->start}, {"stop", cfg.grid->stop},
                 {"count", cfg.grid->count}};
  j["tol"] = tol;
  switch (cfg.command) {
    case Command::density: j["v"] = cfg.v; break;
    case Command::overlap: j["q"] = cfg.q; j["p"] = cfg.p; break;
    case Command::unity: j["nmax"] = cfg.nmax; break;
    case Command::torus: j["g12"] = cfg.g12; break;
    case Command::kowalski:
      j["sector"] = cfg.sector == Sector::boson ? "boson" : "fermion";
      j["l"] = cfg.l;
      j["phi"] = cfg.phi;
      break;
    default: break;
  }
  return j;
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  for (const auto& i : commands())
    if (name == i.name) return i.command;
  return std::nullopt;
}

std::string command_name(Command c) { return info(c).name; }

double default_tolerance(Command c) { return info(c).tol; }

Grid parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 4 || parts[0].empty())
    throw InvalidArgument("grid must have the form var:start:stop:count, got '" + spec + "'");
  Grid g;
  g.var = parts[0];
  try {
    std::size_t used = 0;
    g.start = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("start");
    g.stop = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("stop");
    g.count = std::stoi(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument("count");
  } catch (const std::exception&) {
    throw InvalidArgument("grid has non-numeric fields: '" + spec + "'");
  }
  return g;
}

void validate(const RunConfig& cfg) {
  const auto& ci = info(cfg.command);
  if (cfg.alpha && (cfg.a || cfg.omega || cfg.hbar))
    throw InvalidArgument("--alpha cannot be combined with --a, --omega or --hbar");
  if (cfg.command != Command::kowalski) {
    if (!cfg.alpha && !cfg.omega) throw InvalidArgument("one of --alpha or --omega is required");
    circle_geometry(cfg);  // throws on invalid geometry
  }
  if (cfg.grid) {
    if (ci.vars.empty()) throw InvalidArgument(std::string(ci.name) + " does not take a --grid");
    if (std::find(ci.vars.begin(), ci.vars.end(), cfg.grid->var) == ci.vars.end())
      throw InvalidArgument("grid variable '" + cfg.grid->var + "' is not valid for " + ci.name);
    const bool single = cfg.grid->count == 1 && cfg.grid->start == cfg.grid->stop;
    if (cfg.grid->count < 2 && !single)
      throw InvalidArgument("grid count must be >= 2 (or 1 with start == stop)");
    if (!std::isfinite(cfg.grid->start) || !std::isfinite(cfg.grid->stop))
      throw InvalidArgument("grid bounds must be finite");
  }
  if (cfg.tol && !(*cfg.tol > 0.0)) throw InvalidArgument("--tol must be positive");
  if (cfg.command == Command::unity && (cfg.nmax < 2 || cfg.nmax > 20))
    throw InvalidArgument("--nmax must lie in [2, 20]");
  if (cfg.command == Command::torus && !(std::abs(cfg.g12) < 1.0))
    throw InvalidArgument("--g12 must satisfy |g12| < 1");
  if (!std::isfinite(cfg.l) || !std::isfinite(cfg.phi)) throw InvalidArgument("--l and --phi must be finite");
}

std::vector<Check> evaluate_checks(Command c, const Table& t, double tol) {
  if (c == Command::torus)
    return {max_check("wavefunction_deviation", t, "wavefunction_deviation", tol),
            max_check("overlap_deviation", t, "overlap_deviation", tol),
            max_check("norm_deviation", t, "norm_deviation", tol)};
  std::vector<Check> out{max_check("max_deviation", t, "deviation", tol)};
  if (c == Command::uncertainty) {
    // 2Δ/ℏ lies in (1, 2). Near the upper bound the double evaluation carries a
    // relative error of order 1e-13, so the bounds get a relative slack of tol.
    out.push_back(min_check("band_lower", t, "two_delta", 1.0 - tol));
    out.push_back(max_check("band_upper", t, "two_delta", 2.0 * (1.0 + tol)));
  }
  if (c == Command::kowalski) out.push_back(max_check("constant_error", t, "constant_error", tol));
  return out;
}

bool RunResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

RunResult run(const RunConfig& cfg) {
  validate(cfg);
  const double tol = cfg.tol.value_or(default_tolerance(cfg.command));
  RunResult r;
  switch (cfg.command) {
    case Command::density: r.table = density_table(cfg); break;
    case Command::angle: r.table = angle_table(cfg); break;
    case Command::momentum: r.table = momentum_table(cfg); break;
    case Command::uncertainty: r.table = uncertainty_table(cfg); break;
    case Command::overlap: r.table = overlap_table(cfg); break;
    case Command::unity: r.table = unity_table(cfg); break;
    case Command::torus: r.table = torus_table(cfg); break;
    case Command::kowalski: r.table = kowalski_table(cfg); break;
  }
  r.checks = evaluate_checks(cfg.command, r.table, tol);
  r.config = config_json(cfg, tol);
  return r;
}

std::string render(const RunConfig& cfg, const RunResult& r) {
  if (cfg.format == Format::json) return to_json(r.config, r.table, r.checks).dump(2) + "\n";
  std::ostringstream os;
  write_csv(os, r.table);
  return os.str();
}

}  // namespace circlecs::cli
