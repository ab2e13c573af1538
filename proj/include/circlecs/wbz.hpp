#pragma once

// Weil–Brezin–Zak transform (Tψ)(q, k) = Σ_n e^{inak} ψ(q - na) and its inverse.

#include <complex>
#include <functional>
#include <optional>

#include "circlecs/geometry.hpp"
#include "circlecs/numerics.hpp"

namespace circlecs {

/// A square-integrable function on the line, given as a callable.
struct LineFunction {
  std::function<std::complex<double>(double)> eval;
  /// R such that |ψ(x)| is negligible for |x| > R. When present the Zak sum is
  /// truncated to the cells meeting [-R, R]; otherwise it is summed adaptively.
  std::optional<double> support_hint;
};

/// Σ_n e^{inak} ψ(q - na). Any real q is accepted, so the quasiperiodicity in q
/// can be probed directly. Throws SlowDecay if the adaptive sum has not settled
/// after 10⁴ terms on each side.
std::complex<double> wbz_forward(const LineFunction& psi, double q, double k,
                                 const CircleGeometry& geom, double tol = 1e-15);

using ZakFunction = std::function<std::complex<double>(double q, double k)>;

/// ψ(q - na) = (a/2π) ∫₀^{2π/a} dk e^{-inak} F(q, k), periodic trapezoid with
/// quad.k_points nodes.
std::complex<double> wbz_inverse(const ZakFunction& F, double q, int n,
                                 const CircleGeometry& geom,
                                 const QuadratureSpec& quad = {});

/// Translated and boosted fiducial Gaussian
/// η_{y,p}(x) = e^{ip(x - y/2)/ℏ} (ω/πℏ)^{1/4} e^{-ω(x - y)²/(2ℏ)},
/// with a support hint covering 1e-17 of its peak.
LineFunction gaussian_fiducial(double y, double p, const CircleGeometry& geom);

}  // namespace circlecs
