#pragma once

// Coherent states |q,p;k⟩ on the circle built from the Gaussian fiducial state,
// their coefficients in the plane-wave basis |n;k⟩ = a^{-1/2} e^{i(2πn/a + k)q},
// overlaps, norms and a quadrature check of the resolution of unity.
//
// The states are not normalized; ⟨q,p;k|q,p;k⟩ is given by cs_norm_sq.

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "circlecs/geometry.hpp"
#include "circlecs/numerics.hpp"

namespace circlecs {

/// CS label (q, p) on S¹ × ℝ.
struct PhasePoint {
  double q = 0.0;
  double p = 0.0;
};

/// Label with q reduced into [0, a).
PhasePoint on_circle(double q, double p, const CircleGeometry& geom);

struct ReducedCoords {
  double u = 0.0;
  double v = 0.0;
};

/// u = q/a, v = a(p - kℏ)/(2πℏ).
ReducedCoords reduced_coords(const PhasePoint& label, const CircleGeometry& geom);

/// Inclusive range of basis indices.
struct NRange {
  int lo = 0;
  int hi = 0;
  int size() const noexcept { return hi - lo + 1; }
};

/// Centre round(v), halfwidth ⌈6√(ωℏ)·a/(2πℏ)⌉ + 4.
NRange default_n_range(const PhasePoint& label, const CircleGeometry& geom);

/// A state of L²(S¹) truncated to the basis indices [n_min, n_min + size).
struct CircleState {
  CircleGeometry geom;
  int n_min = 0;
  std::vector<std::complex<double>> coeffs;

  int n_max() const noexcept { return n_min + static_cast<int>(coeffs.size()) - 1; }
  /// Zero outside the stored range.
  std::complex<double> coeff(int n) const noexcept;
  double norm_sq() const;
  /// Σ_n c_n a^{-1/2} e^{i(2πn/a + k)q'}
  std::complex<double> evaluate(double q_prime) const;
};

/// ⟨φ|ψ⟩ over the common index range. Throws InvalidArgument on geometry mismatch.
std::complex<double> inner_product(const CircleState& phi, const CircleState& psi);

/// Fourier transform of the fiducial Gaussian, (πωℏ)^{-1/4} e^{-P²/(2ωℏ)}.
double fiducial_fourier(double P, const CircleGeometry& geom);

/// c_n = √(2πℏ/a) e^{i[p/(2ℏ) - K]q} η̃₀(ℏK - p), K = 2πn/a + k.
std::complex<double> cs_coefficient(const PhasePoint& label, int n, const CircleGeometry& geom);

CircleState cs_coefficients(const PhasePoint& label, NRange range, const CircleGeometry& geom);
CircleState cs_coefficients(const PhasePoint& label, const CircleGeometry& geom);

/// η^{(k)}_{q,p}(q') in closed form (theta function with nome ρ₁).
std::complex<double> cs_wavefunction(const PhasePoint& label, double q_prime,
                                     const CircleGeometry& geom, double tol = kDefaultTol);

/// ⟨l1|l2⟩, in closed form with nome ρ₂. The theta argument is
/// (π/a)[(q₁ - q₂) + (i/ω)(2ℏk - p₁ - p₂)].
std::complex<double> cs_overlap(const PhasePoint& l1, const PhasePoint& l2,
                                const CircleGeometry& geom, double tol = kDefaultTol);
/// cs_overlap as mantissa · e^{log_scale}, for overlaps that underflow.
ScaledSeriesResult cs_overlap_scaled(const PhasePoint& l1, const PhasePoint& l2,
                                     const CircleGeometry& geom, double tol = kDefaultTol);

/// ⟨q,p;k|q,p;k⟩ = θ(a(ℏk - p)/(2ℏ); ρ₁^{1/2}).
double cs_norm_sq(const PhasePoint& label, const CircleGeometry& geom);

/// The same norm written with nome ρ₂:
/// (2/a)√(πℏ/ω) e^{-(ℏk - p)²/(ωℏ)} θ(i 2π(ℏk - p)/(ωa); ρ₂).
double cs_norm_sq_dual(const PhasePoint& label, const CircleGeometry& geom);

/// M_{nm} = (1/2πℏ) ∫₀ᵃ dq ∫ dp conj(c_n) c_m for |n|, |m| ≤ n_max, indexed
/// from -n_max. The momentum window covers every basis centre ℏ(2πn/a + k)
/// with a margin of quad.p_halfwidth·√(ωℏ).
Eigen::MatrixXcd verify_resolution_of_unity(const CircleGeometry& geom, int n_max,
                                            const QuadratureSpec& quad = {});

/// max |M - I| over all entries.
double max_identity_deviation(const Eigen::MatrixXcd& m);

}  // namespace circlecs
