#include "circlecs/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "circlecs/detail/theta_profile.hpp"
#include "circlecs/errors.hpp"

namespace circlecs {

namespace {

constexpr double kPi = std::numbers::pi;

double log_tol(double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("theta: tol must be positive");
  return std::log(tol);
}

// log of the modulus of n^power ρ^{n²} e^{±2in z}, taking the growing sign.
double log_direct_term(int n, int power, double l, double abs_y) {
  const double dn = n;
  return power * std::log(dn) - l * dn * dn + 2.0 * dn * abs_y;
}

// Direct sum Σ n^power ρ^{n²} e^{2inz}, symmetric truncation, returned as
// mantissa · e^{log_scale} with log_scale = log max(1, largest term).
ScaledSeriesResult direct_series_scaled(cplx z, const Nome& rho, double tol, int power) {
  const double ltol = log_tol(tol);
  if (rho.is_zero()) return {power == 0 ? cplx{1.0, 0.0} : cplx{}, 0.0, 1, 0.0};

  const double l = -rho.log_modulus();
  const double abs_y = std::abs(z.imag());

  // Scale of the sum: max(1, largest term); largest term sits near n = |y|/l.
  double log_scale = 0.0;
  {
    const int centre = static_cast<int>(std::min(abs_y / l, 1e6));
    for (int n = std::max(1, centre - 1); n <= centre + 2; ++n)
      log_scale = std::max(log_scale, log_direct_term(n, power, l, abs_y));
  }

  int n_trunc = std::max(1, static_cast<int>(std::ceil(abs_y / l)) + 1);
  double log_tail = 0.0;
  for (;; ++n_trunc) {
    if (n_trunc > kMaxTruncation)
      throw NonConvergence("theta: nome " + std::to_string(rho.rho()) +
                           " needs more than " + std::to_string(kMaxTruncation) +
                           " terms; use theta3_accelerated");
    const double dn = n_trunc;
    const double log_ratio = power * std::log((dn + 2.0) / (dn + 1.0)) -
                             l * (2.0 * dn + 3.0) + 2.0 * abs_y;
    if (log_ratio >= 0.0) continue;
    log_tail = std::log(2.0) + log_direct_term(n_trunc + 1, power, l, abs_y) -
               std::log1p(-std::exp(log_ratio));
    if (log_tail <= ltol + log_scale) break;
  }

  // Smallest terms first; (n, -n) pairs summed together.
  cplx sum{};
  for (int n = n_trunc; n >= 1; --n) {
    const double dn = n;
    const double base = -l * dn * dn;
    const double sign = (rho.negative() && (n % 2 != 0)) ? -1.0 : 1.0;
    const cplx plus = std::exp(cplx(base - 2.0 * dn * z.imag() - log_scale, 2.0 * dn * z.real()));
    const cplx minus = std::exp(cplx(base + 2.0 * dn * z.imag() - log_scale, -2.0 * dn * z.real()));
    const double weight = std::pow(dn, power);
    // (-n)^power = (-1)^power n^power
    sum += sign * weight * (plus + ((power % 2 == 0) ? minus : -minus));
  }
  if (power == 0) sum += std::exp(-log_scale);
  return {sum, log_scale, 2 * n_trunc + 1, std::exp(log_tail - log_scale)};
}

ComplexSeriesResult direct_series(cplx z, const Nome& rho, double tol, int power) {
  const auto s = direct_series_scaled(z, rho, tol, power);
  const double scale = std::exp(s.log_scale);
  return {s.mantissa * scale, s.terms_used, s.tail_bound * scale};
}

// Poisson-summed modular form for 0 < ρ = e^{-l} with l < π (z already shifted
// for negative nomes).
ScaledSeriesResult modular_series(cplx z, double l, double tol) {
  const double ltol = log_tol(tol);
  const double x = z.real();
  const double y = z.imag();
  const long n0 = std::lround(x / kPi);
  const double d0 = x - kPi * static_cast<double>(n0);
  const double log_peak = (y * y - d0 * d0) / l;
  const double prefactor = std::sqrt(kPi / l);

  // Beyond |n - n0| = N + 1 every term is below exp((y² - π²(N+½)²)/l).
  int n_trunc = 1;
  double rel_tail = 0.0;
  for (;; ++n_trunc) {
    if (n_trunc > kMaxTruncation)
      throw NonConvergence("theta: modular series did not converge");
    const double h = kPi * (n_trunc + 0.5);
    const double log_ratio = -2.0 * kPi * kPi * (n_trunc + 1.0) / l;
    const double log_rel = std::log(2.0) - (h * h - d0 * d0) / l -
                           std::log1p(-std::exp(log_ratio));
    rel_tail = std::exp(log_rel);
    if (log_rel <= ltol) break;
  }

  cplx sum{};
  auto term = [&](long n) {
    const cplx d = z - kPi * static_cast<double>(n);
    return std::exp(-d * d / l - log_peak);
  };
  for (int j = n_trunc; j >= 1; --j) sum += term(n0 + j) + term(n0 - j);
  sum += term(n0);
  return {prefactor * sum, log_peak, 2 * n_trunc + 1, prefactor * rel_tail};
}

}  // namespace

cplx ScaledSeriesResult::value() const { return mantissa * std::exp(log_scale); }

Nome::Nome(double rho)
    : rho_(rho),
      log_modulus_(rho == 0.0 ? -std::numeric_limits<double>::infinity()
                              : std::log(std::abs(rho))),
      negative_(rho < 0.0) {
  if (!(std::abs(rho) < 1.0))
    throw NomeOutOfRange("theta: nome must satisfy |rho| < 1, got " + std::to_string(rho));
}

Nome Nome::from_log(double log_modulus, bool negative) {
  if (!(log_modulus < 0.0))
    throw NomeOutOfRange("theta: log|rho| must be negative, got " +
                         std::to_string(log_modulus));
  const double mod = std::exp(log_modulus);
  return Nome(negative ? -mod : mod, log_modulus, negative && mod != 0.0);
}

double modular_switch_nome() noexcept { return std::exp(-kPi); }

ComplexSeriesResult theta3(cplx z, const Nome& rho, double tol) {
  return direct_series(z, rho, tol, 0);
}

ComplexSeriesResult theta3_d1(cplx z, const Nome& rho, double tol) {
  auto r = direct_series(z, rho, tol, 1);
  r.value *= cplx(0.0, 2.0);
  r.tail_bound *= 2.0;
  return r;
}

ComplexSeriesResult theta3_d2(cplx z, const Nome& rho, double tol) {
  auto r = direct_series(z, rho, tol, 2);
  r.value *= -4.0;
  r.tail_bound *= 4.0;
  return r;
}

ScaledSeriesResult theta3_accelerated_scaled(cplx z, const Nome& rho, double tol) {
  if (rho.is_zero() || rho.log_modulus() <= -kPi) {
    return direct_series_scaled(z, rho, tol, 0);
  }
  if (rho.negative()) z += kPi / 2.0;
  return modular_series(z, -rho.log_modulus(), tol);
}

ComplexSeriesResult theta3_accelerated(cplx z, const Nome& rho, double tol) {
  if (rho.is_zero() || rho.log_modulus() <= -kPi) return theta3(z, rho, tol);
  const auto s = theta3_accelerated_scaled(z, rho, tol);
  const double scale = std::exp(s.log_scale);
  return {s.mantissa * scale, s.terms_used, s.tail_bound * scale};
}

PeriodMatrix::PeriodMatrix(Eigen::MatrixXcd omega) : omega_(std::move(omega)), lambda_min_(0.0) {
  if (omega_.rows() == 0 || omega_.rows() != omega_.cols())
    throw PeriodNotConvergent("theta_nd: period matrix must be square and non-empty");
  const double asym = (omega_ - omega_.transpose()).norm();
  if (asym > 1e-12 * std::max(1.0, omega_.norm()))
    throw PeriodNotConvergent("theta_nd: period matrix must be symmetric");
  const Eigen::MatrixXd im = omega_.imag();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (im + im.transpose()),
                                                    Eigen::EigenvaluesOnly);
  lambda_min_ = es.eigenvalues().minCoeff();
  if (!(lambda_min_ > 0.0))
    throw PeriodNotConvergent("theta_nd: Im(Omega) is not positive definite");
}

namespace {

// Bound on Σ over lattice points with ‖m‖_∞ > n_trunc of exp(-πλ|m|² + 2|m||y|),
// using |m|₂ ≥ ‖m‖_∞ and (2s+1)^d - (2s-1)^d points per shell. Requires the
// exponent to be decreasing from s = n_trunc + 1 on.
double lattice_tail_log(int dim, int n_trunc, double lambda, double norm_y) {
  std::vector<double> logs;
  for (int s = n_trunc + 1;; ++s) {
    const double count = std::pow(2.0 * s + 1.0, dim) - std::pow(2.0 * s - 1.0, dim);
    const double lt = std::log(count) - kPi * lambda * s * s + 2.0 * s * norm_y;
    logs.push_back(lt);
    if (lt < logs.front() - 80.0 || s > n_trunc + 100000) break;
  }
  return detail::log_sum_exp(logs) + 1e-12;
}

}  // namespace

ComplexSeriesResult theta_nd(std::span<const cplx> z, const PeriodMatrix& omega, double tol) {
  const double ltol = log_tol(tol);
  const int dim = omega.dim();
  if (static_cast<int>(z.size()) != dim)
    throw DimensionMismatch("theta_nd: argument dimension does not match period matrix");
  const Eigen::MatrixXcd& om = omega.matrix();
  const double lambda = omega.min_imag_eigenvalue();
  double norm_y = 0.0;
  for (const cplx& zi : z) norm_y += zi.imag() * zi.imag();
  norm_y = std::sqrt(norm_y);
  const int n_min = std::max(1, static_cast<int>(std::ceil(norm_y / (kPi * lambda))));

  std::vector<int> m(dim);
  cplx sum{};
  double log_max_term = 0.0;  // scale = max(1, largest term)
  auto add_term = [&]() {
    cplx quad{};
    for (int i = 0; i < dim; ++i) {
      cplx row{};
      for (int j = 0; j < dim; ++j) row += om(i, j) * static_cast<double>(m[j]);
      quad += static_cast<double>(m[i]) * row;
    }
    cplx lin{};
    for (int i = 0; i < dim; ++i) lin += static_cast<double>(m[i]) * z[i];
    const cplx expo = cplx(0.0, kPi) * quad + cplx(0.0, 2.0) * lin;
    log_max_term = std::max(log_max_term, expo.real());
    sum += std::exp(expo);
  };

  long long terms = 0;
  for (int shell = 0;; ++shell) {
    // Odometer over the box [-shell, shell]^dim, keeping points on its surface.
    std::fill(m.begin(), m.end(), -shell);
    while (true) {
      int inf_norm = 0;
      for (int v : m) inf_norm = std::max(inf_norm, std::abs(v));
      if (inf_norm == shell) {
        add_term();
        ++terms;
      }
      int i = 0;
      while (i < dim && m[i] == shell) m[i++] = -shell;
      if (i == dim) break;
      ++m[i];
    }
    if (shell >= n_min) {
      const double lt = lattice_tail_log(dim, shell, lambda, norm_y);
      if (lt <= ltol + log_max_term)
        return {sum, static_cast<int>(terms), std::exp(lt)};
    }
    if (terms > 50'000'000)
      throw NonConvergence("theta_nd: lattice sum exceeded the term cap");
  }
}

RealThetaProfile theta3_real_profile(double x, const Nome& rho) {
  if (rho.negative() || rho.is_zero())
    throw NomeOutOfRange("theta3_real_profile: nome must lie in (0, 1)");
  const auto p = detail::real_theta_profile<double>(x, rho.log_modulus());
  return {p.log_value, p.log_derivative, p.curvature, p.log_curvature_excess, p.terms_used};
}

}  // namespace circlecs
