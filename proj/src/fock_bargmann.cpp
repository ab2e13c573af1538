#include "circlecs/fock_bargmann.hpp"

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

double basis_log_norm(const CircleGeometry& geom) {
  return 0.25 * std::log(4.0 * kPi * geom.hbar() / (geom.a() * geom.a() * geom.omega()));
}

}  // namespace

std::complex<double> bargmann_point(const PhasePoint& label, const CircleGeometry& geom) {
  return {geom.omega() * label.q, -label.p};
}

PhasePoint phase_point(std::complex<double> z, const CircleGeometry& geom) {
  return on_circle(z.real() / geom.omega(), -z.imag(), geom);
}

std::complex<double> analytic_cs(std::complex<double> z_star, const CircleGeometry& geom,
                                 double q_prime, double tol) {
  const double w = geom.omega(), h = geom.hbar();
  const std::complex<double> I(0.0, 1.0);
  const std::complex<double> d = z_star - w * q_prime;
  const std::complex<double> arg = I * geom.a() * (d - I * geom.k() * h) / (2.0 * h);
  const auto th = theta3_accelerated_scaled(arg, geom.rho1(), tol);
  return std::pow(w / (kPi * h), 0.25) * std::exp(-d * d / (2.0 * w * h) + th.log_scale) *
         th.mantissa;
}

std::complex<double> basis_psi_n(int n, std::complex<double> z, const CircleGeometry& geom) {
  const double K = wave_number(n, geom);
  const std::complex<double> I(0.0, 1.0);
  return std::exp(basis_log_norm(geom) - geom.hbar() * K * K / (2.0 * geom.omega()) +
                  I * K * z / geom.omega());
}

std::complex<double> FockElement::evaluate(std::complex<double> z) const {
  const std::complex<double> I(0.0, 1.0);
  std::vector<std::complex<double>> t(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    t[i] = coeffs[i] * std::exp(I * wave_number(n_min + static_cast<int>(i), geom) * z / geom.omega());
  return pairwise_sum(std::span<const std::complex<double>>(t));
}

std::complex<double> FockElement::fock_coefficient(int n) const {
  if (n < n_min || n > n_max()) return {};
  const double K = wave_number(n, geom);
  return coeffs[static_cast<std::size_t>(n - n_min)] *
         std::exp(-basis_log_norm(geom) + geom.hbar() * K * K / (2.0 * geom.omega()));
}

std::complex<double> b_transform(const CircleState& phi, std::complex<double> z) {
  std::vector<std::complex<double>> t(phi.coeffs.size());
  for (std::size_t i = 0; i < phi.coeffs.size(); ++i)
    t[i] = basis_psi_n(phi.n_min + static_cast<int>(i), z, phi.geom) * phi.coeffs[i];
  return pairwise_sum(std::span<const std::complex<double>>(t));
}

FockElement to_fock(const CircleState& phi) {
  FockElement f{phi.geom, phi.n_min, {}};
  f.coeffs.resize(phi.coeffs.size());
  for (std::size_t i = 0; i < phi.coeffs.size(); ++i) {
    const double K = wave_number(phi.n_min + static_cast<int>(i), phi.geom);
    f.coeffs[i] = phi.coeffs[i] *
                  std::exp(basis_log_norm(phi.geom) - phi.geom.hbar() * K * K / (2.0 * phi.geom.omega()));
  }
  return f;
}

CircleState b_inverse(const FockElement& psi) {
  CircleState s{psi.geom, psi.n_min, {}};
  s.coeffs.resize(psi.coeffs.size());
  for (int n = psi.n_min; n <= psi.n_max(); ++n)
    s.coeffs[static_cast<std::size_t>(n - psi.n_min)] = psi.fock_coefficient(n);
  return s;
}

std::complex<double> fock_inner_product(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    const std::function<std::complex<double>(std::complex<double>)>& g,
    const CircleGeometry& geom, const QuadratureSpec& quad, MomentumWindow window) {
  const double wh = geom.omega() * geom.hbar();
  return integrate_cylinder(
      [&](double q, double p) {
        const std::complex<double> z(geom.omega() * q, -p);
        return std::exp(-p * p / wh) * std::conj(f(z)) * g(z);
      },
      geom, quad, window);
}

Eigen::MatrixXcd verify_weighted_unity(const CircleGeometry& geom, int n_max,
                                       const QuadratureSpec& quad) {
  if (n_max < 0) throw InvalidArgument("verify_weighted_unity: n_max must be >= 0");
  quad.validate();
  const int dim = 2 * n_max + 1;
  const double h = geom.hbar(), wh = geom.omega() * geom.hbar();
  const auto window = covering_window(geom, quad, h * wave_number(-n_max, geom),
                                      h * wave_number(n_max, geom));
  const auto qr = periodic_trapezoid(0.0, geom.a(), quad.q_points);
  const auto pr = composite_simpson(window.lo, window.hi, quad.p_points);

  std::vector<Eigen::MatrixXcd> rows(qr.nodes.size());
  parallel_for(qr.nodes.size(), [&](std::size_t i) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::VectorXcd b(dim);
    for (std::size_t j = 0; j < pr.nodes.size(); ++j) {
      const double p = pr.nodes[j];
      const std::complex<double> z(geom.omega() * qr.nodes[i], -p);
      // ⟨n;k|z*;k⟩⟨z;k|m;k⟩ = conj(ψ_n(z)) ψ_m(z)
      for (int n = -n_max; n <= n_max; ++n) b(n + n_max) = basis_psi_n(n, z, geom);
      acc.noalias() += (pr.weights[j] * std::exp(-p * p / wh)) * (b.conjugate() * b.transpose());
    }
    rows[i] = qr.weights[i] * acc;
  });
  return pairwise_reduce(std::move(rows)) / (2.0 * kPi * h);
}

}  // namespace circlecs
