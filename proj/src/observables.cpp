#include "circlecs/observables.hpp"

#include <cmath>
#include <numbers>

#include "circlecs/detail/uncertainty_kernel.hpp"
#include "circlecs/errors.hpp"
#include "circlecs/numerics.hpp"
#include "circlecs/theta.hpp"

namespace circlecs {

namespace {

constexpr double kPi = std::numbers::pi;

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be positive and finite");
}

}  // namespace

double probability_density(double u, double v, double alpha, double a) {
  require_alpha(alpha);
  if (!(a > 0.0)) throw InvalidArgument("probability_density: a must be positive");
  const auto num = theta3_accelerated_scaled({kPi * v, alpha * u}, Nome::from_log(-alpha));
  const auto den = theta3_real_profile(kPi * v, Nome::from_log(-alpha / 2.0));
  const double log_p = -std::log(a) + 0.5 * std::log(2.0 * alpha / kPi) - 2.0 * alpha * u * u +
                       2.0 * (num.log_scale + std::log(std::abs(num.mantissa))) - den.log_value;
  return std::exp(log_p);
}

double log_abs_expect_angle(double v, double alpha) {
  require_alpha(alpha);
  const Nome rho = Nome::from_log(-alpha / 2.0);
  return -kPi * kPi / (2.0 * alpha) + theta3_real_profile(kPi * (v - 0.5), rho).log_value -
         theta3_real_profile(kPi * v, rho).log_value;
}

std::complex<double> expect_angle(double u, double v, double alpha) {
  return std::polar(std::exp(log_abs_expect_angle(v, alpha)), 2.0 * kPi * u);
}

double theta_log_derivative(double v, double alpha) {
  require_alpha(alpha);
  return theta3_real_profile(kPi * v, Nome::from_log(-alpha / 2.0)).log_derivative;
}

double expect_momentum(double p, const CircleGeometry& geom) {
  const double alpha = geom.alpha();
  return p + geom.hbar() * alpha / (2.0 * geom.a()) *
                 theta_log_derivative(geom.reduced_momentum(p), alpha);
}

double momentum_variance(double p, const CircleGeometry& geom) {
  const double alpha = geom.alpha();
  const auto prof =
      theta3_real_profile(kPi * geom.reduced_momentum(p), Nome::from_log(-alpha / 2.0));
  const double unit = geom.hbar() / geom.a();
  return unit * unit * alpha * alpha / 4.0 * std::exp(prof.log_curvature_excess);
}

double expect_momentum_sq(double p, const CircleGeometry& geom) {
  const double m = expect_momentum(p, geom);
  return m * m + momentum_variance(p, geom);
}

UncertaintyReport uncertainty_report(double v, const CircleGeometry& geom) {
  const auto k = detail::uncertainty_kernel<double>(v, geom.alpha());
  UncertaintyReport r;
  r.log_abs_E = k.log_abs_E;
  r.abs_E = std::exp(k.log_abs_E);
  r.delta_E = std::exp(k.log_delta_E);
  r.delta_P = std::exp(k.log_delta_P);
  r.delta_fn = std::exp(k.log_delta_closed);
  r.delta_fn_composed = std::exp(k.log_delta_composed);
  return r;
}

double uncertainty_route_deviation(const UncertaintyReport& r) {
  return std::abs(r.delta_fn_composed - r.delta_fn) / std::abs(r.delta_fn);
}

std::vector<double> linspace(double start, double stop, int count) {
  if (count < 1) throw InvalidArgument("linspace: count must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = start;
    return out;
  }
  for (int i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] = start + (stop - start) * i / (count - 1);
  out.back() = stop;
  return out;
}

std::vector<double> sweep(std::span<const double> grid, const std::function<double(double)>& f) {
  std::vector<double> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { out[i] = f(grid[i]); });
  return out;
}

}  // namespace circlecs
