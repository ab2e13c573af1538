#pragma once

// Real-argument theta profile, generic over the floating-point type so the
// same code path can be run in extended precision.
//
// For a nome ρ = e^{-l} close to 1 (l < π) the sums are taken in the modular
// form θ(x; e^{-l}) = (l/π)^{-1/2} Σ_n exp(-(x - nπ)²/l), whose terms are
// positive weights w_n. Then
//   θ'/θ                   = -(2/l) (x - π⟨n⟩_w)
//   θ''/θ - (θ'/θ)² + 2/l  = (4π²/l²) Var_w(n)
// and Var_w(n) is summed from non-negative terms in the log domain, so no
// cancellation or underflow occurs even when neighbouring weights differ by
// e^{-2000}. For l ≥ π the direct Fourier series is used.

#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/log1p.hpp>
#include <boost/math/special_functions/expm1.hpp>

namespace circlecs::detail {

template <class Real>
struct RealThetaProfileT {
  Real log_value;
  Real log_derivative;
  Real curvature;
  Real log_curvature_excess;
  int terms_used = 1;
};

template <class Real>
Real log_sum_exp(const std::vector<Real>& logs) {
  using std::exp;
  using std::log;
  if (logs.empty()) return -std::numeric_limits<Real>::infinity();
  Real m = logs.front();
  for (const Real& x : logs)
    if (x > m) m = x;
  if (m == -std::numeric_limits<Real>::infinity()) return m;
  Real s = 0;
  for (const Real& x : logs) s += exp(x - m);
  return m + log(s);
}

/// log(e^y - 1) for y > 0.
template <class Real>
Real log_expm1(const Real& y) {
  using std::exp;
  using std::log;
  if (y > Real(1)) return y + boost::math::log1p(-exp(-y));
  return log(boost::math::expm1(y));
}

template <class Real>
RealThetaProfileT<Real> real_theta_profile(const Real& x, const Real& log_nome) {
  using std::abs;
  using std::cos;
  using std::exp;
  using std::floor;
  using std::log;
  using std::sin;
  const Real pi = boost::math::constants::pi<Real>();
  const Real l = -log_nome;
  const Real eps = std::numeric_limits<Real>::epsilon();
  // Terms whose log-weight falls this far below the peak do not affect the sums.
  const Real cutoff = log(eps) - Real(40);

  RealThetaProfileT<Real> out{};
  if (l < pi) {
    const long n0 = static_cast<long>(floor(x / pi + Real(0.5)));
    const Real peak = -(x - pi * Real(n0)) * (x - pi * Real(n0)) / l;
    std::vector<long> offsets{0};
    std::vector<Real> rel{Real(0)};
    for (long j = 1;; ++j) {
      bool any = false;
      for (long s : {-1L, 1L}) {
        const long n = n0 + s * j;
        const Real d = x - pi * Real(n);
        const Real r = -d * d / l - peak;
        // The nearest neighbours carry the variance even when they are
        // negligible for the value itself.
        if (r > cutoff || j <= 2) {
          offsets.push_back(s * j);
          rel.push_back(r);
          any = true;
        }
      }
      if (!any) break;
    }
    const Real log_s0 = log_sum_exp(rel);
    Real shift = 0;  // ⟨n⟩ - n0
    for (std::size_t i = 0; i < rel.size(); ++i)
      shift += Real(offsets[i]) * exp(rel[i] - log_s0);
    std::vector<Real> var_terms;
    var_terms.reserve(rel.size());
    for (std::size_t i = 0; i < rel.size(); ++i) {
      const Real dev = abs(Real(offsets[i]) - shift);
      if (dev > Real(0)) var_terms.push_back(rel[i] + 2 * log(dev));
    }
    const Real log_var = log_sum_exp(var_terms) - log_s0;

    out.log_value = -log(l / pi) / 2 + peak + log_s0;
    out.log_derivative = -(Real(2) / l) * ((x - pi * Real(n0)) - pi * shift);
    out.log_curvature_excess = log(4 * pi * pi) + log_var - 2 * log(l);
    out.curvature = exp(out.log_curvature_excess) - Real(2) / l;
    out.terms_used = static_cast<int>(rel.size());
    return out;
  }

  Real s0 = 1, s1 = 0, s2 = 0;
  int terms = 1;
  for (long n = 1;; ++n) {
    const Real rn = Real(n);
    const Real w = exp(-l * rn * rn);
    if (w * rn * rn < eps * Real(1e-3)) break;
    const Real c = cos(2 * rn * x);
    const Real s = sin(2 * rn * x);
    s0 += 2 * w * c;
    s1 += -4 * rn * w * s;
    s2 += -8 * rn * rn * w * c;
    terms += 2;
  }
  out.log_value = log(s0);
  out.log_derivative = s1 / s0;
  out.curvature = s2 / s0 - out.log_derivative * out.log_derivative;
  out.log_curvature_excess = log(out.curvature + Real(2) / l);
  out.terms_used = terms;
  return out;
}

}  // namespace circlecs::detail
