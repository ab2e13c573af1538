#pragma once

// Deterministic quadrature on the cylinder S¹ × ℝ and small summation helpers.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "circlecs/geometry.hpp"

namespace circlecs {

struct QuadratureSpec {
  /// Uniform periodic-trapezoid nodes over one circle period.
  int q_points = 128;
  /// Composite Simpson intervals over the momentum window (rounded up to even).
  int p_points = 512;
  /// Margin of the momentum window beyond its centre(s), in units of √(ωℏ).
  double p_halfwidth = 8.0;
  /// Periodic-trapezoid nodes over one Brillouin period 2π/a (Zak inversion).
  int k_points = 256;

  /// Throws InvalidArgument if q_points < 8, p_points < 16, k_points < 8 or
  /// p_halfwidth ≤ 0.
  void validate() const;
};

struct MomentumWindow {
  double lo;
  double hi;
};

/// ℏk ± p_halfwidth·√(ωℏ).
MomentumWindow centered_window(const CircleGeometry& geom, const QuadratureSpec& spec);

/// [centre_lo - p_halfwidth·√(ωℏ), centre_hi + p_halfwidth·√(ωℏ)], for
/// integrands that are sums of Gaussians centred between the two values.
MomentumWindow covering_window(const CircleGeometry& geom, const QuadratureSpec& spec,
                               double centre_lo, double centre_hi);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n equispaced nodes on [lo, hi) with weight (hi - lo)/n.
QuadratureRule periodic_trapezoid(double lo, double hi, int n);
/// Composite Simpson rule with n intervals (n rounded up to even), n + 1 nodes.
QuadratureRule composite_simpson(double lo, double hi, int n);

/// Pairwise (cascade) summation; the result depends only on the input order.
double pairwise_sum(std::span<const double> xs);
std::complex<double> pairwise_sum(std::span<const std::complex<double>> xs);

/// In-place pairwise reduction of a non-empty vector of summable values.
template <class T>
T pairwise_reduce(std::vector<T> xs) {
  std::size_t width = 1;
  while (width < xs.size()) {
    for (std::size_t i = 0; i + width < xs.size(); i += 2 * width) xs[i] += xs[i + width];
    width *= 2;
  }
  return xs.front();
}

/// Calls fn(i) for i in [0, n) on the available hardware threads. fn must be
/// safe to call concurrently for distinct i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

using CylinderIntegrand = std::function<std::complex<double>(double q, double p)>;

/// (1/2πℏ) ∫₀ᵃ dq ∫ dp f(q, p) over the centred window.
std::complex<double> integrate_cylinder(const CylinderIntegrand& f, const CircleGeometry& geom,
                                        const QuadratureSpec& spec);
/// Same, over an explicit momentum window.
std::complex<double> integrate_cylinder(const CylinderIntegrand& f, const CircleGeometry& geom,
                                        const QuadratureSpec& spec, MomentumWindow window);

}  // namespace circlecs
