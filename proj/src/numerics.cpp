#include "circlecs/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "circlecs/errors.hpp"

namespace circlecs {

void QuadratureSpec::validate() const {
  if (q_points < 8) throw InvalidArgument("quadrature: q_points must be >= 8");
  if (p_points < 16) throw InvalidArgument("quadrature: p_points must be >= 16");
  if (k_points < 8) throw InvalidArgument("quadrature: k_points must be >= 8");
  if (!(p_halfwidth > 0.0)) throw InvalidArgument("quadrature: p_halfwidth must be positive");
}

MomentumWindow centered_window(const CircleGeometry& geom, const QuadratureSpec& spec) {
  const double c = geom.hbar() * geom.k();
  return covering_window(geom, spec, c, c);
}

MomentumWindow covering_window(const CircleGeometry& geom, const QuadratureSpec& spec,
                               double centre_lo, double centre_hi) {
  const double w = spec.p_halfwidth * geom.momentum_width();
  return {std::min(centre_lo, centre_hi) - w, std::max(centre_lo, centre_hi) + w};
}

QuadratureRule periodic_trapezoid(double lo, double hi, int n) {
  if (n < 1) throw InvalidArgument("periodic_trapezoid: need at least one node");
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.assign(n, (hi - lo) / n);
  for (int i = 0; i < n; ++i) r.nodes[i] = lo + (hi - lo) * i / n;
  return r;
}

QuadratureRule composite_simpson(double lo, double hi, int n) {
  if (n < 2) throw InvalidArgument("composite_simpson: need at least two intervals");
  if (n % 2 != 0) ++n;
  const double h = (hi - lo) / n;
  QuadratureRule r;
  r.nodes.resize(n + 1);
  r.weights.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    r.nodes[i] = lo + h * i;
    const double c = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    r.weights[i] = c * h / 3.0;
  }
  return r;
}

namespace {

template <class T>
T pairwise(std::span<const T> xs) {
  if (xs.size() <= 8) {
    T s{};
    for (const T& x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise(xs.first(half)) + pairwise(xs.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> xs) { return pairwise(xs); }

std::complex<double> pairwise_sum(std::span<const std::complex<double>> xs) {
  return pairwise(xs);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  for (auto& t : pool) t.join();
}

std::complex<double> integrate_cylinder(const CylinderIntegrand& f, const CircleGeometry& geom,
                                        const QuadratureSpec& spec) {
  return integrate_cylinder(f, geom, spec, centered_window(geom, spec));
}

std::complex<double> integrate_cylinder(const CylinderIntegrand& f, const CircleGeometry& geom,
                                        const QuadratureSpec& spec, MomentumWindow window) {
  spec.validate();
  const auto qr = periodic_trapezoid(0.0, geom.a(), spec.q_points);
  const auto pr = composite_simpson(window.lo, window.hi, spec.p_points);
  std::vector<std::complex<double>> rows(qr.nodes.size());
  parallel_for(qr.nodes.size(), [&](std::size_t i) {
    std::vector<std::complex<double>> col(pr.nodes.size());
    for (std::size_t j = 0; j < pr.nodes.size(); ++j)
      col[j] = pr.weights[j] * f(qr.nodes[i], pr.nodes[j]);
    rows[i] = qr.weights[i] * pairwise_sum(std::span<const std::complex<double>>(col));
  });
  return pairwise_sum(std::span<const std::complex<double>>(rows)) /
         (2.0 * std::numbers::pi * geom.hbar());
}

}  // namespace circlecs
