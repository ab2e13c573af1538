#pragma once

// Analytic realization of L²(S¹): the states |z*;k⟩, the transform
// (Bφ)(z) = ⟨z;k|φ⟩ onto the space ℱ of entire functions with
// ψ(z + ωa) = e^{iak} ψ(z) and norm
//   ‖ψ‖² = (1/2πℏ) ∫₀ᵃ dq ∫ dp e^{-p²/(ωℏ)} |ψ(ωq - ip)|²,
// the orthonormal basis ψ_n = B|n;k⟩ and the inverse transform.

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "circlecs/circle_cs.hpp"

namespace circlecs {

/// z = ωq - ip for a phase-space label; z* is its conjugate.
std::complex<double> bargmann_point(const PhasePoint& label, const CircleGeometry& geom);
/// Inverse of bargmann_point, with q reduced into [0, a).
PhasePoint phase_point(std::complex<double> z, const CircleGeometry& geom);

/// η_{z*}(q') = (ω/πℏ)^{1/4} e^{-(z* - ωq')²/(2ωℏ)} θ(ia(z* - ωq' - ikℏ)/(2ℏ); ρ₁).
std::complex<double> analytic_cs(std::complex<double> z_star, const CircleGeometry& geom,
                                 double q_prime, double tol = kDefaultTol);

/// ψ_n(z) = (4πℏ/(a²ω))^{1/4} e^{-ℏK²/(2ω)} e^{iKz/ω}, K = 2πn/a + k.
std::complex<double> basis_psi_n(int n, std::complex<double> z, const CircleGeometry& geom);

/// Element of ℱ stored by its Fourier coefficients: ψ(z) = Σ a_n e^{iKz/ω}.
struct FockElement {
  CircleGeometry geom;
  int n_min = 0;
  std::vector<std::complex<double>> coeffs;

  int n_max() const noexcept { return n_min + static_cast<int>(coeffs.size()) - 1; }
  std::complex<double> evaluate(std::complex<double> z) const;
  /// (ψ_n|ψ)_ℱ = a_n (a²ω/4πℏ)^{1/4} e^{ℏK²/(2ω)}
  std::complex<double> fock_coefficient(int n) const;
};

/// (Bφ)(z) = Σ_n ψ_n(z) φ_n.
std::complex<double> b_transform(const CircleState& phi, std::complex<double> z);

/// Bφ as an element of ℱ.
FockElement to_fock(const CircleState& phi);

/// B⁻¹ψ = Σ_n (ψ_n|ψ)_ℱ |n;k⟩.
CircleState b_inverse(const FockElement& psi);

/// (1/2πℏ) ∫₀ᵃ dq ∫ dp e^{-p²/(ωℏ)} conj(f(z)) g(z), z = ωq - ip, over the
/// given momentum window.
std::complex<double> fock_inner_product(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    const std::function<std::complex<double>(std::complex<double>)>& g,
    const CircleGeometry& geom, const QuadratureSpec& quad, MomentumWindow window);

/// Matrix of (1/2πℏ) ∫₀ᵃ dq ∫ dp e^{-p²/(ωℏ)} ⟨n;k|z*;k⟩⟨z;k|m;k⟩ for
/// |n|, |m| ≤ n_max, which must be the identity.
Eigen::MatrixXcd verify_weighted_unity(const CircleGeometry& geom, int n_max,
                                       const QuadratureSpec& quad = {});

}  // namespace circlecs
