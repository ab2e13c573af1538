#pragma once

// Angle and momentum dispersions of |q,p;k⟩ and the uncertainty function Δ(v),
// generic over the floating-point type. Everything is carried as logarithms:
// at α = 0.01 the quantities involved span e^{±2000}.
//
// With ρ = e^{-α/2}, x₀ = πv, x₁ = π(v - 1/2):
//   log|⟨E⟩| = -π²/(2α) + log θ(x₁) - log θ(x₀)
//   (ΔE)²    = 1 - |⟨E⟩|²
//   (ΔP)²    = (ℏ/a)² (α²/4) [θ''/θ - (θ'/θ)² + 4/α]
// Δ is then obtained twice: by composing the two dispersions (route A) and from
// the single closed form (route B)
//   (Δ/ℏ)² = α (|⟨E⟩|^{-2} - 1) (α/4) [θ''/θ - (θ'/θ)² + 4/α] / (2π)².

#include <cmath>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/expm1.hpp>
#include <boost/math/special_functions/log1p.hpp>

#include "circlecs/detail/theta_profile.hpp"

namespace circlecs::detail {

template <class Real>
struct UncertaintyKernelT {
  Real log_abs_E;
  /// log ΔE
  Real log_delta_E;
  /// log of ΔP in units of ℏ/a
  Real log_delta_P;
  /// log(Δ/ℏ) from the composed dispersions
  Real log_delta_composed;
  /// log(Δ/ℏ) from the closed form
  Real log_delta_closed;
  /// θ'/θ at πv
  Real log_derivative;
};

/// log(1 - e^{y}) for y < 0.
template <class Real>
Real log1m_exp(const Real& y) {
  using std::exp;
  using std::log;
  if (y < -Real(0.6931471805599453)) return boost::math::log1p(-exp(y));
  return log(-boost::math::expm1(y));
}

template <class Real>
UncertaintyKernelT<Real> uncertainty_kernel(const Real& v, const Real& alpha) {
  using std::log;
  const Real pi = boost::math::constants::pi<Real>();
  const Real log_nome = -alpha / 2;
  const auto p0 = real_theta_profile<Real>(pi * v, log_nome);
  const auto p1 = real_theta_profile<Real>(pi * (v - Real(0.5)), log_nome);

  UncertaintyKernelT<Real> out{};
  out.log_derivative = p0.log_derivative;
  out.log_abs_E = -pi * pi / (2 * alpha) + p1.log_value - p0.log_value;
  out.log_delta_E = log1m_exp<Real>(2 * out.log_abs_E) / 2;
  out.log_delta_P = log(alpha / 2) + p0.log_curvature_excess / 2;
  // (a/2π) ΔE/√(1 - ΔE²) ΔP, with √(1 - ΔE²) = |⟨E⟩|.
  out.log_delta_composed =
      out.log_delta_E - out.log_abs_E + out.log_delta_P - log(2 * pi);
  out.log_delta_closed =
      (log(alpha) + log_expm1<Real>(-2 * out.log_abs_E) + log(alpha / 4) +
       p0.log_curvature_excess) / 2 -
      log(2 * pi);
  return out;
}

}  // namespace circlecs::detail
