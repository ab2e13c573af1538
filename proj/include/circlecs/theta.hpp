#pragma once

// Jacobi theta function θ(z; ρ) = Σ_n ρ^{n²} e^{2inz} (often written θ₃), its first
// two z-derivatives, and the n-dimensional (Riemann) theta function
// Θ(z | Ω) = Σ_{m ∈ ℤⁿ} exp(iπ m·Ωm) exp(2i m·z).
//
// Every series evaluation reports how many terms were summed and a bound on the
// modulus of the omitted tail. Truncation stops once that bound drops below
// tol times the scale of the sum, where the scale is max(1, largest term) for
// the direct series and the largest term for the modular (Poisson) form. For
// the direct series at real z the scale is exactly 1, so the bound is absolute.

#include <cmath>
#include <complex>
#include <span>

#include <Eigen/Core>

namespace circlecs {

using cplx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-15;

/// Largest truncation order N (terms n ∈ [-N, N]) a one-dimensional series may use.
inline constexpr int kMaxTruncation = 10000;

struct ComplexSeriesResult {
  cplx value{};
  int terms_used = 1;
  double tail_bound = 0.0;
};

/// A series value stored as mantissa · e^{log_scale}; used where the value
/// itself would under- or overflow a double.
struct ScaledSeriesResult {
  cplx mantissa{};
  double log_scale = 0.0;
  int terms_used = 1;
  /// Tail bound in the same scaled units as the mantissa.
  double tail_bound = 0.0;

  cplx value() const;
};

/// Real nome ρ ∈ (-1, 1). Keeps ln|ρ| exactly when constructed from it, which
/// matters for nomes e^{-ε} close to 1.
class Nome {
 public:
  explicit Nome(double rho);
  /// ρ = ±exp(log_modulus); log_modulus must be < 0 (or -inf for ρ = 0).
  static Nome from_log(double log_modulus, bool negative = false);

  double rho() const noexcept { return rho_; }
  double log_modulus() const noexcept { return log_modulus_; }
  bool negative() const noexcept { return negative_; }
  /// True only for ρ = 0 itself; tiny nomes such as e^{-2000} keep their logarithm.
  bool is_zero() const noexcept { return std::isinf(log_modulus_); }

 private:
  Nome(double rho, double log_modulus, bool negative) noexcept
      : rho_(rho), log_modulus_(log_modulus), negative_(negative) {}

  double rho_;
  double log_modulus_;
  bool negative_;
};

/// |ρ| above which theta3_accelerated switches to the modular form (e^{-π}).
double modular_switch_nome() noexcept;

ComplexSeriesResult theta3(cplx z, const Nome& rho, double tol = kDefaultTol);
/// θ'(z; ρ) = 2i Σ n ρ^{n²} e^{2inz}.
ComplexSeriesResult theta3_d1(cplx z, const Nome& rho, double tol = kDefaultTol);
/// θ''(z; ρ) = -4 Σ n² ρ^{n²} e^{2inz}.
ComplexSeriesResult theta3_d2(cplx z, const Nome& rho, double tol = kDefaultTol);

/// θ(z; ρ) with |ρ| > e^{-π} evaluated through the modular transformation
///   θ(z; e^{-πt}) = t^{-1/2} e^{-z²/(πt)} θ(-iz/t; e^{-π/t})
///                 = t^{-1/2} Σ_n exp(-(z - nπ)²/(πt)),
/// otherwise identical to theta3. Negative nomes use θ(z; -ρ) = θ(z + π/2; ρ).
ComplexSeriesResult theta3_accelerated(cplx z, const Nome& rho, double tol = kDefaultTol);

/// Same as theta3_accelerated, but with the value returned in scaled form.
ScaledSeriesResult theta3_accelerated_scaled(cplx z, const Nome& rho,
                                             double tol = kDefaultTol);

/// Symmetric n×n period matrix with positive-definite imaginary part.
class PeriodMatrix {
 public:
  explicit PeriodMatrix(Eigen::MatrixXcd omega);

  const Eigen::MatrixXcd& matrix() const noexcept { return omega_; }
  int dim() const noexcept { return static_cast<int>(omega_.rows()); }
  /// Smallest eigenvalue of Im(Ω).
  double min_imag_eigenvalue() const noexcept { return lambda_min_; }

 private:
  Eigen::MatrixXcd omega_;
  double lambda_min_;
};

/// Box-truncated Riemann theta sum over ‖m‖_∞ ≤ N; N grows until the Gaussian
/// tail bound (from the smallest eigenvalue of Im Ω) is below tol · scale.
ComplexSeriesResult theta_nd(std::span<const cplx> z, const PeriodMatrix& omega,
                             double tol = kDefaultTol);

/// log θ(x; ρ) and its logarithmic derivatives for real x and 0 < ρ < 1.
struct RealThetaProfile {
  double log_value = 0.0;
  /// θ'/θ
  double log_derivative = 0.0;
  /// θ''/θ - (θ'/θ)²
  double curvature = 0.0;
  /// log(curvature + 2/(-ln ρ)). The shifted curvature is strictly positive and
  /// is evaluated without cancellation even when ρ → 1.
  double log_curvature_excess = 0.0;
  int terms_used = 1;
};

RealThetaProfile theta3_real_profile(double x, const Nome& rho);

}  // namespace circlecs
