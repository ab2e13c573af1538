#include "circlecs/torus_cs.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include <Eigen/Dense>

#include "circlecs/errors.hpp"
#include "circlecs/numerics.hpp"

namespace circlecs {

namespace {

constexpr double kPi = std::numbers::pi;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

void require_dim(const VectorXd& v, int n, const char* what) {
  if (v.size() != n) throw DimensionMismatch(std::string(what) + ": dimension does not match the lattice");
}

}  // namespace

LatticeSpec::LatticeSpec(MatrixXd basis, VectorXd lengths)
    : basis_(std::move(basis)), lengths_(std::move(lengths)) {
  const auto n = lengths_.size();
  if (n < 1 || n > kMaxTorusDim) throw InvalidArgument("lattice: dimension must be 1..3");
  if (basis_.rows() != n || basis_.cols() != n)
    throw DimensionMismatch("lattice: basis must be n×n with one column per length");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(lengths_(i) > 0.0)) throw InvalidArgument("lattice: lengths must be positive");
    if (std::abs(basis_.col(i).norm() - 1.0) > 1e-12)
      throw InvalidArgument("lattice: basis vectors must have unit norm");
  }
  gram_ = basis_.transpose() * basis_;
  Eigen::LLT<MatrixXd> llt(gram_);
  if (llt.info() != Eigen::Success) throw InvalidArgument("lattice: basis vectors are degenerate");
  det_g_ = gram_.determinant();
  if (!(det_g_ > 1e-14)) throw InvalidArgument("lattice: basis vectors are degenerate");
  gram_inv_ = llt.solve(MatrixXd::Identity(n, n));
  dual_ = basis_.transpose().inverse();
}

LatticeSpec LatticeSpec::orthogonal(const VectorXd& lengths) {
  return LatticeSpec(MatrixXd::Identity(lengths.size(), lengths.size()), lengths);
}

LatticeSpec LatticeSpec::planar(double a1, double a2, double g12) {
  if (!(std::abs(g12) < 1.0)) throw InvalidArgument("lattice: |g12| must be < 1");
  MatrixXd e(2, 2);
  e << 1.0, g12, 0.0, std::sqrt(1.0 - g12 * g12);
  VectorXd a(2);
  a << a1, a2;
  return LatticeSpec(e, a);
}

TorusGeometry::TorusGeometry(LatticeSpec lattice, VectorXd k, double omega, double hbar)
    : lattice_(std::move(lattice)), k_(std::move(k)), omega_(omega), hbar_(hbar) {
  require_dim(k_, lattice_.dim(), "torus geometry");
  if (!(omega_ > 0.0) || !(hbar_ > 0.0)) throw InvalidArgument("torus geometry: omega and hbar must be positive");
  for (int i = 0; i < dim(); ++i)
    if (!(k_(i) >= 0.0 && k_(i) < 2.0 * kPi / lattice_.lengths()(i)))
      throw InvalidArgument("torus geometry: k_i must lie in [0, 2π/a_i)");
}

PeriodMatrix TorusGeometry::period_matrix() const {
  const MatrixXd d = lattice_.delta();
  const MatrixXd im = omega_ / (2.0 * kPi * hbar_) * d * lattice_.gram() * d;
  return PeriodMatrix(Eigen::MatrixXcd(std::complex<double>(0.0, 1.0) * im.cast<std::complex<double>>()));
}

PeriodMatrix TorusGeometry::dual_period_matrix() const {
  const VectorXd inv_a = lattice_.lengths().cwiseInverse();
  const MatrixXd im = 4.0 * kPi * hbar_ / omega_ * inv_a.asDiagonal() * lattice_.gram_inverse() *
                      inv_a.asDiagonal();
  return PeriodMatrix(Eigen::MatrixXcd(std::complex<double>(0.0, 1.0) * im.cast<std::complex<double>>()));
}

std::complex<double> torus_cs_wavefunction(const TorusLabel& label, const VectorXd& q_prime,
                                           const TorusGeometry& geom, double tol) {
  const int n = geom.dim();
  require_dim(label.q, n, "torus_cs_wavefunction");
  require_dim(label.p, n, "torus_cs_wavefunction");
  require_dim(q_prime, n, "torus_cs_wavefunction");
  const double w = geom.omega(), h = geom.hbar();
  const auto& lat = geom.lattice();
  const VectorXd d = label.q - q_prime;
  const std::complex<double> I(0.0, 1.0);
  const VectorXcd z =
      (lat.lengths().cast<std::complex<double>>().asDiagonal() *
       ((h * geom.k() - label.p).cast<std::complex<double>>() + I * w * (lat.gram() * d).cast<std::complex<double>>())) /
      (2.0 * h);
  const auto th = theta_nd(std::span<const std::complex<double>>(z.data(), n), geom.period_matrix(), tol);
  const double log_mod = 0.25 * n * std::log(w / (kPi * h)) - w * d.dot(lat.gram() * d) / (2.0 * h);
  const double phase = (-label.p.dot(label.q) / 2.0 + label.p.dot(q_prime)) / h;
  return std::polar(std::exp(log_mod), phase) * th.value;
}

std::complex<double> torus_overlap(const TorusLabel& l1, const TorusLabel& l2,
                                   const TorusGeometry& geom, double tol) {
  const int n = geom.dim();
  for (const auto* v : {&l1.q, &l1.p, &l2.q, &l2.p}) require_dim(*v, n, "torus_overlap");
  const double w = geom.omega(), h = geom.hbar();
  const auto& lat = geom.lattice();
  const VectorXd& k = geom.k();
  const VectorXd d1 = h * k - l1.p, d2 = h * k - l2.p;
  const std::complex<double> I(0.0, 1.0);
  const VectorXcd z =
      kPi * lat.lengths().cwiseInverse().cast<std::complex<double>>().asDiagonal() *
      ((l1.q - l2.q).cast<std::complex<double>>() +
       (I / w) * (lat.gram_inverse() * (2.0 * h * k - l1.p - l2.p)).cast<std::complex<double>>());
  const auto th =
      theta_nd(std::span<const std::complex<double>>(z.data(), n), geom.dual_period_matrix(), tol);
  const double log_mod = n * std::log(2.0) - std::log(lat.cell_volume()) +
                         0.5 * n * std::log(kPi * h / w) -
                         (d1.dot(lat.gram_inverse() * d1) + d2.dot(lat.gram_inverse() * d2)) / (2.0 * w * h);
  const double phase = (l2.p.dot(l2.q) - l1.p.dot(l1.q)) / (2.0 * h) + k.dot(l1.q - l2.q);
  return std::polar(std::exp(log_mod), phase) * th.value;
}

double torus_norm_sq(const TorusLabel& label, const TorusGeometry& geom) {
  const int n = geom.dim();
  require_dim(label.q, n, "torus_norm_sq");
  require_dim(label.p, n, "torus_norm_sq");
  const double w = geom.omega(), h = geom.hbar();
  const auto& lat = geom.lattice();
  const VectorXd d = h * geom.k() - label.p;
  const VectorXd y = 2.0 * kPi / w * lat.lengths().cwiseInverse().asDiagonal() * (lat.gram_inverse() * d);
  const VectorXcd z = std::complex<double>(0.0, 1.0) * y.cast<std::complex<double>>();
  const auto th =
      theta_nd(std::span<const std::complex<double>>(z.data(), n), geom.dual_period_matrix());
  const double log_mod = n * std::log(2.0) - std::log(lat.cell_volume()) +
                         0.5 * n * std::log(kPi * h / w) - d.dot(lat.gram_inverse() * d) / (w * h);
  return std::exp(log_mod) * th.value.real();
}

VectorXd torus_wave_vector(const Eigen::VectorXi& m, const TorusGeometry& geom) {
  if (m.size() != geom.dim()) throw DimensionMismatch("torus_wave_vector: dimension does not match the lattice");
  return geom.k() + 2.0 * kPi * geom.lattice().lengths().cwiseInverse().cwiseProduct(m.cast<double>());
}

std::complex<double> torus_coefficient(const TorusLabel& label, const Eigen::VectorXi& m,
                                       const TorusGeometry& geom) {
  const int n = geom.dim();
  require_dim(label.q, n, "torus_coefficient");
  require_dim(label.p, n, "torus_coefficient");
  const double w = geom.omega(), h = geom.hbar();
  const auto& lat = geom.lattice();
  const VectorXd b = torus_wave_vector(m, geom);
  const VectorXd d = h * b - label.p;
  const double log_mod = -0.5 * std::log(lat.cell_volume()) + 0.25 * n * std::log(4.0 * kPi * h / w) -
                         d.dot(lat.gram_inverse() * d) / (2.0 * w * h);
  const double phase = (label.p / (2.0 * h) - b).dot(label.q);
  return std::polar(std::exp(log_mod), phase);
}

std::vector<Eigen::VectorXi> torus_index_box(int dim, int n_max) {
  if (dim < 1 || n_max < 0) throw InvalidArgument("torus_index_box: bad arguments");
  std::vector<Eigen::VectorXi> out;
  Eigen::VectorXi m = Eigen::VectorXi::Constant(dim, -n_max);
  while (true) {
    out.push_back(m);
    int i = dim - 1;
    while (i >= 0 && m(i) == n_max) m(i--) = -n_max;
    if (i < 0) break;
    ++m(i);
  }
  return out;
}

Eigen::MatrixXcd verify_torus_unity(const TorusGeometry& geom, int n_max, const TorusQuadrature& quad) {
  const int n = geom.dim();
  if (n > 2) throw InvalidArgument("verify_torus_unity: only n <= 2 is supported");
  if (quad.q_points < 4 || quad.p_points < 16 || !(quad.p_halfwidth > 0.0))
    throw InvalidArgument("verify_torus_unity: bad quadrature parameters");
  const auto idx = torus_index_box(n, n_max);
  const int dim = static_cast<int>(idx.size());
  const auto& lat = geom.lattice();
  const double h = geom.hbar();
  const double margin = quad.p_halfwidth * std::sqrt(geom.omega() * h);

  // One-dimensional rules per direction; p in covariant components, which
  // together with lattice coordinates for q gives the measure dq⃗ dp⃗ = dq dp.
  std::vector<QuadratureRule> qr, pr;
  for (int i = 0; i < n; ++i) {
    const double a = lat.lengths()(i);
    qr.push_back(periodic_trapezoid(0.0, a, quad.q_points));
    const double lo = h * (geom.k()(i) - 2.0 * kPi * n_max / a) - margin;
    const double hi = h * (geom.k()(i) + 2.0 * kPi * n_max / a) + margin;
    pr.push_back(composite_simpson(lo, hi, quad.p_points));
  }
  auto tensor = [n](const std::vector<QuadratureRule>& rules) {
    std::vector<std::pair<VectorXd, double>> pts;
    std::vector<std::size_t> c(static_cast<std::size_t>(n), 0);
    while (true) {
      VectorXd x(n);
      double wgt = 1.0;
      for (int i = 0; i < n; ++i) {
        x(i) = rules[i].nodes[c[i]];
        wgt *= rules[i].weights[c[i]];
      }
      pts.emplace_back(x, wgt);
      int i = n - 1;
      while (i >= 0 && c[i] + 1 == rules[i].nodes.size()) c[i--] = 0;
      if (i < 0) break;
      ++c[i];
    }
    return pts;
  };
  const auto qpts = tensor(qr);
  const auto ppts = tensor(pr);

  std::vector<VectorXd> waves;
  for (const auto& m : idx) waves.push_back(torus_wave_vector(m, geom));

  std::vector<Eigen::MatrixXcd> rows(ppts.size());
  parallel_for(ppts.size(), [&](std::size_t j) {
    const VectorXd& p = ppts[j].first;
    // |c_m| depends on p only; the q dependence is the phase (p/(2ℏ) - b)ᵀq.
    const TorusLabel at_origin{VectorXd::Zero(n), p};
    VectorXd amp(dim);
    std::vector<VectorXd> freq(static_cast<std::size_t>(dim));
    for (int s = 0; s < dim; ++s) {
      amp(s) = std::abs(torus_coefficient(at_origin, idx[static_cast<std::size_t>(s)], geom));
      freq[static_cast<std::size_t>(s)] = p / (2.0 * h) - waves[static_cast<std::size_t>(s)];
    }
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
    VectorXcd c(dim);
    for (const auto& [q, wq] : qpts) {
      for (int s = 0; s < dim; ++s) c(s) = std::polar(amp(s), freq[static_cast<std::size_t>(s)].dot(q));
      acc.noalias() += wq * (c.conjugate() * c.transpose());
    }
    rows[j] = ppts[j].second * acc;
  });
  return pairwise_reduce(std::move(rows)) / std::pow(2.0 * kPi * h, n);
}

}  // namespace circlecs
