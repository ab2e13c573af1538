#pragma once

#include "circlecs/theta.hpp"

namespace circlecs {

/// Circle of length a with quasimomentum k, fiducial Gaussian width ω and ℏ.
///
/// Derived quantities: α = a²ω/(2ℏ), ρ₁ = e^{-α}, ρ₂ = e^{-2π²/α} = e^{-4π²ℏ/(ωa²)}.
class CircleGeometry {
 public:
  /// Throws InvalidArgument unless a, ω, ℏ > 0 and 0 ≤ k < 2π/a.
  CircleGeometry(double a, double k, double omega, double hbar);

  /// Units ℏ = hbar, a = a, with ω chosen so that a²ω/(2ℏ) = alpha.
  static CircleGeometry from_alpha(double alpha, double hbar = 1.0,
                                   double a = 6.283185307179586, double k = 0.0);

  double a() const noexcept { return a_; }
  double k() const noexcept { return k_; }
  double omega() const noexcept { return omega_; }
  double hbar() const noexcept { return hbar_; }

  double alpha() const noexcept { return a_ * a_ * omega_ / (2.0 * hbar_); }
  /// √(ωℏ), the momentum width of the fiducial Gaussian.
  double momentum_width() const noexcept;
  /// 2πℏ/a, the spacing of the momentum spectrum.
  double momentum_quantum() const noexcept;

  Nome rho1() const { return Nome::from_log(-alpha()); }
  Nome rho1_sqrt() const { return Nome::from_log(-alpha() / 2.0); }
  Nome rho2() const;

  /// v = a(p - kℏ)/(2πℏ)
  double reduced_momentum(double p) const noexcept;
  /// Inverse of reduced_momentum.
  double momentum_from_reduced(double v) const noexcept;

 private:
  double a_, k_, omega_, hbar_;
};

}  // namespace circlecs
