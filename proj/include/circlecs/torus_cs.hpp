#pragma once

// Coherent states on the n-torus ℝⁿ/ℒ for a lattice ℒ = {Σ mᵢ aᵢ e⃗ᵢ} with unit
// (not necessarily orthogonal) basis vectors e⃗ᵢ.
//
// Conventions: positions q are lattice coordinates (q⃗ = Σ qᵢ e⃗ᵢ); momenta p
// and quasimomenta k are covariant components (pᵢ = p⃗·e⃗ᵢ), so p⃗·q⃗ = pᵀq,
// |q⃗|² = qᵀGq and |p⃗|² = pᵀG⁻¹p. On an orthonormal lattice these reduce to
// Cartesian components.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Core>

#include "circlecs/theta.hpp"

namespace circlecs {

inline constexpr int kMaxTorusDim = 3;

class LatticeSpec {
 public:
  /// basis: columns are the vectors e⃗ᵢ (unit norm to 1e-12); lengths: aᵢ > 0.
  LatticeSpec(Eigen::MatrixXd basis, Eigen::VectorXd lengths);

  static LatticeSpec orthogonal(const Eigen::VectorXd& lengths);
  /// e⃗₁ = (1, 0), e⃗₂ = (g₁₂, √(1 - g₁₂²)).
  static LatticeSpec planar(double a1, double a2, double g12);

  int dim() const noexcept { return static_cast<int>(lengths_.size()); }
  const Eigen::MatrixXd& basis() const noexcept { return basis_; }
  const Eigen::VectorXd& lengths() const noexcept { return lengths_; }
  /// gᵢⱼ = e⃗ᵢ·e⃗ⱼ
  const Eigen::MatrixXd& gram() const noexcept { return gram_; }
  const Eigen::MatrixXd& gram_inverse() const noexcept { return gram_inv_; }
  /// Columns ε⃗ᵢ with ε⃗ᵢ·e⃗ⱼ = δᵢⱼ.
  const Eigen::MatrixXd& dual_basis() const noexcept { return dual_; }
  /// diag(aᵢ)
  Eigen::MatrixXd delta() const { return lengths_.asDiagonal(); }
  /// g = det G
  double det_gram() const noexcept { return det_g_; }
  /// A = Π aᵢ
  double length_product() const noexcept { return lengths_.prod(); }
  /// √g·A, the Euclidean volume of the cell.
  double cell_volume() const noexcept { return std::sqrt(det_g_) * lengths_.prod(); }

 private:
  Eigen::MatrixXd basis_, gram_, gram_inv_, dual_;
  Eigen::VectorXd lengths_;
  double det_g_;
};

class TorusGeometry {
 public:
  /// k: covariant components with 0 ≤ kᵢ < 2π/aᵢ. Throws InvalidArgument on
  /// bad parameters, DimensionMismatch if k does not match the lattice.
  TorusGeometry(LatticeSpec lattice, Eigen::VectorXd k, double omega, double hbar);

  const LatticeSpec& lattice() const noexcept { return lattice_; }
  const Eigen::VectorXd& k() const noexcept { return k_; }
  double omega() const noexcept { return omega_; }
  double hbar() const noexcept { return hbar_; }
  int dim() const noexcept { return lattice_.dim(); }

  /// Ω = i(ω/2πℏ) ΔGΔ
  PeriodMatrix period_matrix() const;
  /// Ω' = -2Ω⁻¹
  PeriodMatrix dual_period_matrix() const;

 private:
  LatticeSpec lattice_;
  Eigen::VectorXd k_;
  double omega_, hbar_;
};

struct TorusLabel {
  Eigen::VectorXd q;
  Eigen::VectorXd p;
};

/// η^{(k)}_{q,p}(q') = (ω/πℏ)^{n/4} e^{-ipᵀq/(2ℏ)} e^{ipᵀq'/ℏ} e^{-ω|q - q'|²/(2ℏ)}
///                     · Θ(Δ(ℏk - p + iωG(q - q'))/(2ℏ) | Ω).
std::complex<double> torus_cs_wavefunction(const TorusLabel& label, const Eigen::VectorXd& q_prime,
                                           const TorusGeometry& geom, double tol = kDefaultTol);

/// ⟨l1|l2⟩ with l1 = (q', p'), l2 = (q, p):
/// 2ⁿ/(√g A) (πℏ/ω)^{n/2} e^{i(pᵀq - p'ᵀq')/(2ℏ)} e^{ikᵀ(q' - q)}
/// e^{-(|ℏk - p'|² + |ℏk - p|²)/(2ωℏ)} Θ(πΔ⁻¹[q' - q + (i/ω)G⁻¹(2ℏk - p - p')] | Ω').
std::complex<double> torus_overlap(const TorusLabel& l1, const TorusLabel& l2,
                                   const TorusGeometry& geom, double tol = kDefaultTol);

/// 2ⁿ/(√g A) (πℏ/ω)^{n/2} e^{-|ℏk - p|²/(ωℏ)} Θ(i(2π/ω)Δ⁻¹G⁻¹(ℏk - p) | Ω').
double torus_norm_sq(const TorusLabel& label, const TorusGeometry& geom);

/// Wave vector b = k + 2πΔ⁻¹m (covariant components) of the plane wave |m;k⟩.
Eigen::VectorXd torus_wave_vector(const Eigen::VectorXi& m, const TorusGeometry& geom);

/// Coefficient of |q,p;k⟩ on |m;k⟩ = (√g A)^{-1/2} e^{ibᵀq'}:
/// (√g A)^{-1/2} (4πℏ/ω)^{n/4} e^{i(p/(2ℏ) - b)ᵀq} e^{-|ℏb - p|²/(2ωℏ)}.
std::complex<double> torus_coefficient(const TorusLabel& label, const Eigen::VectorXi& m,
                                       const TorusGeometry& geom);

struct TorusQuadrature {
  /// Periodic trapezoid nodes per lattice direction.
  int q_points = 8;
  /// Simpson intervals per momentum direction.
  int p_points = 96;
  /// Margin beyond the outermost basis centres, in units of √(ωℏ).
  double p_halfwidth = 8.0;
};

/// M_{mm'} = (2πℏ)^{-n} ∫_{𝕋ⁿ} dq⃗ ∫ dp⃗ conj(c_m) c_{m'} over the plane waves
/// with ‖m‖_∞ ≤ n_max (lexicographic order, first index slowest). Tensor
/// quadrature in (q, p); n ≤ 2.
Eigen::MatrixXcd verify_torus_unity(const TorusGeometry& geom, int n_max,
                                    const TorusQuadrature& quad = {});

/// All m ∈ ℤⁿ with ‖m‖_∞ ≤ n_max in the order used by verify_torus_unity.
std::vector<Eigen::VectorXi> torus_index_box(int dim, int n_max);

}  // namespace circlecs
