#include "circlecs/circle_cs.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "circlecs/errors.hpp"

namespace circlecs {

namespace {

constexpr double kPi = std::numbers::pi;

double wave_number(int n, const CircleGeometry& geom) {
  return 2.0 * kPi * n / geom.a() + geom.k();
}

bool same_geometry(const CircleGeometry& x, const CircleGeometry& y) {
  return x.a() == y.a() && x.k() == y.k() && x.omega() == y.omega() && x.hbar() == y.hbar();
}

}  // namespace

PhasePoint on_circle(double q, double p, const CircleGeometry& geom) {
  double r = std::fmod(q, geom.a());
  if (r < 0.0) r += geom.a();
  if (r >= geom.a()) r = 0.0;
  return {r, p};
}

ReducedCoords reduced_coords(const PhasePoint& label, const CircleGeometry& geom) {
  return {label.q / geom.a(), geom.reduced_momentum(label.p)};
}

NRange default_n_range(const PhasePoint& label, const CircleGeometry& geom) {
  const int centre = static_cast<int>(std::lround(geom.reduced_momentum(label.p)));
  const int half =
      static_cast<int>(std::ceil(6.0 * geom.momentum_width() / geom.momentum_quantum())) + 4;
  return {centre - half, centre + half};
}

std::complex<double> CircleState::coeff(int n) const noexcept {
  if (n < n_min || n > n_max()) return {};
  return coeffs[static_cast<std::size_t>(n - n_min)];
}

double CircleState::norm_sq() const {
  std::vector<double> m(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) m[i] = std::norm(coeffs[i]);
  return pairwise_sum(std::span<const double>(m));
}

std::complex<double> CircleState::evaluate(double q_prime) const {
  std::vector<std::complex<double>> t(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    t[i] = coeffs[i] * std::polar(1.0, wave_number(n_min + static_cast<int>(i), geom) * q_prime);
  return pairwise_sum(std::span<const std::complex<double>>(t)) / std::sqrt(geom.a());
}

std::complex<double> inner_product(const CircleState& phi, const CircleState& psi) {
  if (!same_geometry(phi.geom, psi.geom))
    throw InvalidArgument("inner_product: states live on different geometries");
  const int lo = std::max(phi.n_min, psi.n_min);
  const int hi = std::min(phi.n_max(), psi.n_max());
  std::vector<std::complex<double>> t;
  for (int n = lo; n <= hi; ++n) t.push_back(std::conj(phi.coeff(n)) * psi.coeff(n));
  return pairwise_sum(std::span<const std::complex<double>>(t));
}

double fiducial_fourier(double P, const CircleGeometry& geom) {
  const double wh = geom.omega() * geom.hbar();
  return std::pow(kPi * wh, -0.25) * std::exp(-P * P / (2.0 * wh));
}

std::complex<double> cs_coefficient(const PhasePoint& label, int n, const CircleGeometry& geom) {
  const double h = geom.hbar();
  const double K = wave_number(n, geom);
  const double mod = std::sqrt(2.0 * kPi * h / geom.a()) * fiducial_fourier(h * K - label.p, geom);
  return std::polar(mod, (label.p / (2.0 * h) - K) * label.q);
}

CircleState cs_coefficients(const PhasePoint& label, NRange range, const CircleGeometry& geom) {
  if (range.hi < range.lo) throw InvalidArgument("cs_coefficients: empty index range");
  CircleState s{geom, range.lo, {}};
  s.coeffs.resize(static_cast<std::size_t>(range.size()));
  for (int n = range.lo; n <= range.hi; ++n)
    s.coeffs[static_cast<std::size_t>(n - range.lo)] = cs_coefficient(label, n, geom);
  return s;
}

CircleState cs_coefficients(const PhasePoint& label, const CircleGeometry& geom) {
  return cs_coefficients(label, default_n_range(label, geom), geom);
}

std::complex<double> cs_wavefunction(const PhasePoint& label, double q_prime,
                                     const CircleGeometry& geom, double tol) {
  const double w = geom.omega(), h = geom.hbar(), a = geom.a();
  const std::complex<double> zs(w * label.q, label.p);
  const std::complex<double> d = zs - w * q_prime;
  const std::complex<double> I(0.0, 1.0);
  const std::complex<double> expo = I * label.p * zs / (2.0 * w * h) - d * d / (2.0 * w * h);
  const std::complex<double> arg = I * a * (d - I * geom.k() * h) / (2.0 * h);
  const auto th = theta3_accelerated_scaled(arg, geom.rho1(), tol);
  return std::pow(w / (kPi * h), 0.25) * std::exp(expo + th.log_scale) * th.mantissa;
}

ScaledSeriesResult cs_overlap_scaled(const PhasePoint& l1, const PhasePoint& l2,
                                     const CircleGeometry& geom, double tol) {
  const double w = geom.omega(), h = geom.hbar(), a = geom.a(), k = geom.k();
  const std::complex<double> I(0.0, 1.0);
  const double d1 = h * k - l2.p, d2 = h * k - l1.p;
  const std::complex<double> expo =
      I * (k * (l1.q - l2.q) + (l2.q * l2.p - l1.q * l1.p) / (2.0 * h)) -
      (d1 * d1 + d2 * d2) / (2.0 * w * h);
  const std::complex<double> arg =
      kPi / a * ((l1.q - l2.q) + I / w * (2.0 * h * k - l1.p - l2.p));
  auto th = theta3_accelerated_scaled(arg, geom.rho2(), tol);
  const double log_pref = std::log(2.0 / a * std::sqrt(kPi * h / w));
  th.mantissa *= std::exp(I * expo.imag());
  th.log_scale += log_pref + expo.real();
  return th;
}

std::complex<double> cs_overlap(const PhasePoint& l1, const PhasePoint& l2,
                                const CircleGeometry& geom, double tol) {
  return cs_overlap_scaled(l1, l2, geom, tol).value();
}

double cs_norm_sq(const PhasePoint& label, const CircleGeometry& geom) {
  const double x = geom.a() * (geom.hbar() * geom.k() - label.p) / (2.0 * geom.hbar());
  return std::exp(theta3_real_profile(x, geom.rho1_sqrt()).log_value);
}

double cs_norm_sq_dual(const PhasePoint& label, const CircleGeometry& geom) {
  const double w = geom.omega(), h = geom.hbar(), a = geom.a();
  const double d = h * geom.k() - label.p;
  const std::complex<double> arg(0.0, 2.0 * kPi * d / (w * a));
  const auto th = theta3_accelerated_scaled(arg, geom.rho2());
  const double log_pref = std::log(2.0 / a * std::sqrt(kPi * h / w)) - d * d / (w * h);
  return std::exp(log_pref + th.log_scale) * th.mantissa.real();
}

Eigen::MatrixXcd verify_resolution_of_unity(const CircleGeometry& geom, int n_max,
                                            const QuadratureSpec& quad) {
  if (n_max < 0) throw InvalidArgument("verify_resolution_of_unity: n_max must be >= 0");
  quad.validate();
  const int dim = 2 * n_max + 1;
  const double h = geom.hbar();
  const auto window = covering_window(geom, quad, h * wave_number(-n_max, geom),
                                      h * wave_number(n_max, geom));
  const auto qr = periodic_trapezoid(0.0, geom.a(), quad.q_points);
  const auto pr = composite_simpson(window.lo, window.hi, quad.p_points);

  std::vector<Eigen::MatrixXcd> rows(qr.nodes.size());
  parallel_for(qr.nodes.size(), [&](std::size_t i) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::VectorXcd c(dim);
    for (std::size_t j = 0; j < pr.nodes.size(); ++j) {
      const PhasePoint l{qr.nodes[i], pr.nodes[j]};
      for (int n = -n_max; n <= n_max; ++n) c(n + n_max) = cs_coefficient(l, n, geom);
      acc.noalias() += pr.weights[j] * (c.conjugate() * c.transpose());
    }
    rows[i] = qr.weights[i] * acc;
  });
  return pairwise_reduce(std::move(rows)) / (2.0 * kPi * h);
}

double max_identity_deviation(const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd d = m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return d.cwiseAbs().maxCoeff();
}

}  // namespace circlecs
