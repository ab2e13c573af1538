#pragma once

// Probability density, angle and momentum expectations, dispersions and the
// uncertainty function Δ(v) for the circle coherent states, in the reduced
// variables u and v and the parameter α = a²ω/(2ℏ).

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "circlecs/geometry.hpp"

namespace circlecs {

/// 𝒫_α(u; v) = (1/a)√(2α/π) e^{-2αu²} |θ(πv + iαu; e^{-α})|² / θ(πv; e^{-α/2}),
/// with u = (q' - q)/a.
double probability_density(double u, double v, double alpha, double a);

/// ⟨E⟩(u, v) = e^{2πiu} e^{-π²/(2α)} θ(π(v - 1/2); e^{-α/2}) / θ(πv; e^{-α/2}),
/// with u = q/a.
std::complex<double> expect_angle(double u, double v, double alpha);
/// log|⟨E⟩|(v); finite even where |⟨E⟩| underflows.
double log_abs_expect_angle(double v, double alpha);

/// θ'(πv; e^{-α/2}) / θ(πv; e^{-α/2})
double theta_log_derivative(double v, double alpha);

/// ⟨P⟩ = p + (ℏα/(2a)) θ'/θ at πv.
double expect_momentum(double p, const CircleGeometry& geom);
/// (ΔP)² = (ℏ/a)² [(α²/4)(θ''/θ - (θ'/θ)²) + α]
double momentum_variance(double p, const CircleGeometry& geom);
/// ⟨P²⟩, evaluated as ⟨P⟩² + (ΔP)².
double expect_momentum_sq(double p, const CircleGeometry& geom);

struct UncertaintyReport {
  /// ΔE = √(1 - |⟨E⟩|²)
  double delta_E = 0.0;
  /// ΔP in units of ℏ/a
  double delta_P = 0.0;
  /// Δ(v) in units of ℏ, closed form
  double delta_fn = 0.0;
  /// Δ(v) in units of ℏ, composed from ΔE and ΔP
  double delta_fn_composed = 0.0;
  double bound_lo = 0.5;
  double bound_hi = 1.0;
  double abs_E = 0.0;
  double log_abs_E = 0.0;
};

/// Dispersions and Δ(v) at reduced momentum v; Δ is reported in units of ℏ
/// (bounds 1/2 and 1), ΔP in units of ℏ/a.
UncertaintyReport uncertainty_report(double v, const CircleGeometry& geom);

/// Relative difference of the two routes to Δ(v).
double uncertainty_route_deviation(const UncertaintyReport& r);

/// count equispaced values from start to stop inclusive (count = 1 gives start).
std::vector<double> linspace(double start, double stop, int count);

/// f evaluated on every grid point, in parallel, results in grid order.
std::vector<double> sweep(std::span<const double> grid, const std::function<double(double)>& f);

}  // namespace circlecs
