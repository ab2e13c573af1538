#include "circlecs/wbz.hpp"

#include <cmath>
#include <numbers>

#include "circlecs/errors.hpp"

namespace circlecs {

namespace {

constexpr int kMaxZakTerms = 10000;

}  // namespace

std::complex<double> wbz_forward(const LineFunction& psi, double q, double k,
                                 const CircleGeometry& geom, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("wbz_forward: tol must be positive");
  if (!psi.eval) throw InvalidArgument("wbz_forward: empty function");
  const double a = geom.a();
  auto term = [&](long n) {
    return std::polar(1.0, static_cast<double>(n) * a * k) * psi.eval(q - static_cast<double>(n) * a);
  };

  if (psi.support_hint) {
    const double R = std::abs(*psi.support_hint);
    const long lo = static_cast<long>(std::floor((q - R) / a));
    const long hi = static_cast<long>(std::ceil((q + R) / a));
    if (hi - lo > 2L * kMaxZakTerms) throw SlowDecay("wbz_forward: support hint spans too many cells");
    // Smallest-magnitude cells first: sum outward-in from both ends.
    std::complex<double> s{};
    long l = lo, h = hi;
    while (l <= h) {
      const double dl = std::abs(q - static_cast<double>(l) * a);
      const double dh = std::abs(q - static_cast<double>(h) * a);
      if (dl >= dh) s += term(l++);
      else s += term(h--);
    }
    return s;
  }

  // Adaptive: grow symmetric shells until two successive shells are negligible.
  const long n0 = static_cast<long>(std::floor(q / a));
  std::complex<double> s = term(n0);
  int quiet = 0;
  for (long j = 1; j <= kMaxZakTerms; ++j) {
    const std::complex<double> shell = term(n0 - j) + term(n0 + j);
    s += shell;
    if (std::abs(shell) <= tol * std::abs(s)) {
      if (++quiet >= 2) return s;
    } else {
      quiet = 0;
    }
  }
  throw SlowDecay("wbz_forward: Zak sum did not settle within the term cap");
}

std::complex<double> wbz_inverse(const ZakFunction& F, double q, int n,
                                 const CircleGeometry& geom, const QuadratureSpec& quad) {
  quad.validate();
  const double a = geom.a();
  const auto rule = periodic_trapezoid(0.0, 2.0 * std::numbers::pi / a, quad.k_points);
  std::vector<std::complex<double>> terms(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double k = rule.nodes[i];
    terms[i] = rule.weights[i] * std::polar(1.0, -static_cast<double>(n) * a * k) * F(q, k);
  }
  return a / (2.0 * std::numbers::pi) * pairwise_sum(std::span<const std::complex<double>>(terms));
}

LineFunction gaussian_fiducial(double y, double p, const CircleGeometry& geom) {
  const double w = geom.omega(), h = geom.hbar();
  const double norm = std::pow(w / (std::numbers::pi * h), 0.25);
  // e^{-ω d²/(2ℏ)} < 1e-17 beyond d² = 2ℏ·39.2/ω.
  const double reach = std::sqrt(2.0 * h * 39.2 / w);
  LineFunction f;
  f.eval = [=](double x) {
    const double d = x - y;
    return std::polar(norm * std::exp(-w * d * d / (2.0 * h)), p * (x - y / 2.0) / h);
  };
  f.support_hint = std::abs(y) + reach;
  return f;
}

}  // namespace circlecs
