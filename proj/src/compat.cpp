#include "circlecs/compat.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "circlecs/errors.hpp"
#include "circlecs/fock_bargmann.hpp"

namespace circlecs {

std::complex<double> KowalskiLabel::xi() const { return std::exp(std::complex<double>(-l, phi)); }

double sector_quasimomentum(Sector s) noexcept { return s == Sector::boson ? 0.0 : 0.5; }

int default_kowalski_range(const KowalskiLabel& label) {
  return static_cast<int>(std::ceil(std::abs(label.l))) + 10;
}

std::map<double, std::complex<double>> kowalski_coefficients(const KowalskiLabel& label, int m_max) {
  if (m_max < 0) throw InvalidArgument("kowalski_coefficients: m_max must be >= 0");
  const double shift = label.sector == Sector::boson ? 0.0 : 0.5;
  std::map<double, std::complex<double>> out;
  for (int m = -m_max; m <= m_max; ++m) {
    const double j = m + shift;
    // ξ^{-j} = e^{jl - ijφ}
    out[j] = std::exp(std::complex<double>(j * label.l - j * j / 2.0, -j * label.phi));
  }
  return out;
}

EquivalenceReport equivalence_check(const KowalskiLabel& label, double omega) {
  return equivalence_check(label, sector_quasimomentum(label.sector), omega);
}

EquivalenceReport equivalence_check(const KowalskiLabel& label, double k, double omega) {
  if (k != sector_quasimomentum(label.sector))
    throw SectorMismatch(label.sector == Sector::boson
                             ? "equivalence_check: integer j requires k = 0"
                             : "equivalence_check: half-integer j requires k = 1/2");
  const double a = 2.0 * std::numbers::pi;
  const CircleGeometry geom(a, k, omega, 1.0);
  // z = ωq - ip with q = φ, p = l.
  const std::complex<double> z(omega * label.phi, -label.l);

  const auto kw = kowalski_coefficients(label, default_kowalski_range(label));
  EquivalenceReport r;
  std::complex<double> num{};
  double den = 0.0;
  for (const auto& [j, ck] : kw) {
    // The basis state with momentum eigenvalue ℏ(2πn/a + k) = n + k = j.
    const int n = static_cast<int>(std::lround(j - k));
    const std::complex<double> cs = std::conj(basis_psi_n(n, z, geom));
    num += std::conj(ck) * cs;
    den += std::norm(ck);
    r.j.push_back(j);
    r.ratios.push_back(cs / ck);
  }
  r.constant = num / den;
  r.terms = static_cast<int>(r.ratios.size());
  for (const auto& x : r.ratios)
    r.max_deviation = std::max(r.max_deviation, std::abs(x - r.constant) / std::abs(r.constant));
  r.constant_error = std::abs(r.constant - std::pow(std::numbers::pi, -0.25));
  return r;
}

}  // namespace circlecs
