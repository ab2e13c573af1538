#pragma once

// Coherent states on the circle in the form Σ_j ξ^{-j} e^{-j²/2} |j⟩ with
// ξ = e^{-l + iφ} (integer j for bosons, half-integer j for fermions), and the
// check that they coincide, up to a constant, with the analytic states |z*;k⟩
// at ω = ℏ = 1, a = 2π and k = 0 or 1/2.

#include <complex>
#include <map>
#include <vector>

namespace circlecs {

enum class Sector { boson, fermion };

struct KowalskiLabel {
  double l = 0.0;
  double phi = 0.0;
  Sector sector = Sector::boson;

  std::complex<double> xi() const;
};

/// Quasimomentum belonging to a sector at a = 2π: 0 or 1/2.
double sector_quasimomentum(Sector s) noexcept;

/// Coefficients ξ^{-j} e^{-j²/2} for j = m (+1/2 for fermions), m ∈ [-m_max, m_max].
std::map<double, std::complex<double>> kowalski_coefficients(const KowalskiLabel& label, int m_max);

/// Default m_max: ⌈|l|⌉ + 10, beyond which |ξ^{-j}e^{-j²/2}| < 1e-16 of its peak.
int default_kowalski_range(const KowalskiLabel& label);

struct EquivalenceReport {
  /// Least-squares constant c in (CS coefficient) ≈ c·(Kowalski coefficient).
  std::complex<double> constant{};
  /// max_j |ratio_j - c| / |c|
  double max_deviation = 0.0;
  /// |c - π^{-1/4}|
  double constant_error = 0.0;
  int terms = 0;
  /// The compared indices j and the ratios (CS coefficient)/(Kowalski coefficient).
  std::vector<double> j;
  std::vector<std::complex<double>> ratios;
};

/// Compares with |z*;k⟩ at z* = ω φ + i l ω (q = φ, p = l), a = 2π, ℏ = 1, on the
/// basis |n;k⟩ whose momentum n + k equals j. The default k is the sector's;
/// SectorMismatch is thrown if k does not belong to the sector. omega ≠ 1
/// serves as a negative control.
EquivalenceReport equivalence_check(const KowalskiLabel& label, double omega = 1.0);
EquivalenceReport equivalence_check(const KowalskiLabel& label, double k, double omega);

}  // namespace circlecs
