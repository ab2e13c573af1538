#include "circlecs/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "circlecs/errors.hpp"

namespace circlecs {

CircleGeometry::CircleGeometry(double a, double k, double omega, double hbar)
    : a_(a), k_(k), omega_(omega), hbar_(hbar) {
  if (!(a > 0.0 && std::isfinite(a))) throw InvalidArgument("geometry: a must be positive");
  if (!(omega > 0.0 && std::isfinite(omega)))
    throw InvalidArgument("geometry: omega must be positive");
  if (!(hbar > 0.0 && std::isfinite(hbar)))
    throw InvalidArgument("geometry: hbar must be positive");
  if (!(k >= 0.0 && k < 2.0 * std::numbers::pi / a))
    throw InvalidArgument("geometry: k must lie in [0, 2pi/a), got " + std::to_string(k));
}

CircleGeometry CircleGeometry::from_alpha(double alpha, double hbar, double a, double k) {
  if (!(alpha > 0.0 && std::isfinite(alpha)))
    throw InvalidArgument("geometry: alpha must be positive");
  return CircleGeometry(a, k, 2.0 * hbar * alpha / (a * a), hbar);
}

double CircleGeometry::momentum_width() const noexcept { return std::sqrt(omega_ * hbar_); }

double CircleGeometry::momentum_quantum() const noexcept {
  return 2.0 * std::numbers::pi * hbar_ / a_;
}

Nome CircleGeometry::rho2() const {
  return Nome::from_log(-2.0 * std::numbers::pi * std::numbers::pi / alpha());
}

double CircleGeometry::reduced_momentum(double p) const noexcept {
  return a_ * (p - k_ * hbar_) / (2.0 * std::numbers::pi * hbar_);
}

double CircleGeometry::momentum_from_reduced(double v) const noexcept {
  return k_ * hbar_ + v * momentum_quantum();
}

}  // namespace circlecs
