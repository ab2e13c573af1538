#include <doctest.h>

#include <cmath>
#include <numbers>

#include "circlecs/circle_cs.hpp"
#include "circlecs/observables.hpp"
#include "oracles.hpp"

using namespace circlecs;
using oracle::rel;
using std::numbers::pi;

namespace {

const double kAlphas[] = {0.01, 0.1, 1.0, 5.0, 15.0, 100.0};

// ⟨P^power⟩ from the Gaussian weights |c_n|² ∝ exp(-(ℏK_n - p)²/(ωℏ)).
double momentum_moment(double p, const CircleGeometry& g, int power) {
  const int centre = static_cast<int>(std::lround(g.reduced_momentum(p)));
  double num = 0.0, den = 0.0;
  for (int n = centre - 300; n <= centre + 300; ++n) {
    const double P = g.hbar() * (2 * pi * n / g.a() + g.k());
    const double w = std::exp(-(P - p) * (P - p) / (g.omega() * g.hbar()));
    num += w * std::pow(P, power);
    den += w;
  }
  return num / den;
}

}  // namespace

TEST_CASE("probability density") {
  const double a = 2 * pi;

  SUBCASE("periodic in u and v, nonnegative") {
    for (double alpha : {0.2, 3.0, 40.0})
      for (double u : {-0.3, 0.1, 0.45})
        for (double v : {0.0, 0.3, 0.8}) {
          const double d = probability_density(u, v, alpha, a);
          CHECK(d >= 0.0);
          CHECK(probability_density(u + 1, v, alpha, a) == doctest::Approx(d).epsilon(1e-11));
          CHECK(probability_density(u, v + 1, alpha, a) == doctest::Approx(d).epsilon(1e-11));
        }
  }

  SUBCASE("normalized over one period") {
    for (double alpha : {0.2, 5.0, 15.0, 100.0})
      for (double v : {0.0, 0.25, 0.5}) {
        const cplx integral = oracle::trapezoid_periodic(
            [&](double u) -> cplx { return a * probability_density(u, v, alpha, a); }, -0.5, 0.5, 512);
        CHECK(std::abs(integral - 1.0) < 1e-8);
      }
  }

  SUBCASE("Gaussian at large alpha") {
    const double alpha = 100.0;
    for (int i = 0; i <= 100; ++i) {
      const double u = -0.5 + 0.01 * i;
      const double gauss = std::sqrt(2 * alpha / pi) * std::exp(-2 * alpha * u * u);
      CHECK(std::abs(a * probability_density(u, 0.0, alpha, a) - gauss) < 1e-4);
    }
  }

  SUBCASE("flattens as alpha goes to zero") {
    double prev = 1e300;
    for (double alpha : {2.0, 0.5, 0.1, 0.01}) {
      double dev = 0.0;
      for (int i = 0; i <= 20; ++i) dev = std::max(dev, std::abs(a * probability_density(-0.5 + 0.05 * i, 0.0, alpha, a) - 1.0));
      CHECK(dev <= std::max(prev * 0.5, 1e-15));
      prev = dev;
    }
    CHECK(prev < 1e-12);
  }
}

TEST_CASE("angle expectation") {
  SUBCASE("shift relation of the angle operator") {
    for (double alpha : {0.2, 1.0, 5.0, 15.0}) {
      const auto g = CircleGeometry::from_alpha(alpha, 1.0, 2 * pi, 0.35);
      for (const PhasePoint l : {PhasePoint{1.3, 0.4}, PhasePoint{5.0, -1.1}}) {
        const PhasePoint shifted{l.q, l.p + g.momentum_quantum()};
        const cplx via_overlap = std::exp(cplx(0, pi * l.q / g.a())) * cs_overlap(l, shifted, g) / cs_norm_sq(l, g);
        const auto r = reduced_coords(l, g);
        CHECK(rel(expect_angle(r.u, r.v, alpha), via_overlap) < 1e-9);

        // and the coefficient series Σ conj(c_{n+1}) c_n
        cplx s{};
        for (int n = -60; n <= 60; ++n) s += std::conj(cs_coefficient(l, n + 1, g)) * cs_coefficient(l, n, g);
        CHECK(rel(expect_angle(r.u, r.v, alpha), s / cs_norm_sq(l, g)) < 1e-9);
      }
    }
  }

  SUBCASE("even and periodic in v, modulus below one") {
    for (double alpha : kAlphas)
      for (double v : {0.0, 0.1, 0.25, 0.4, 0.5}) {
        const double m = std::abs(expect_angle(0.2, v, alpha));
        const double lm = log_abs_expect_angle(v, alpha);
        CHECK(lm < 0.0);
        CHECK(log_abs_expect_angle(-v, alpha) == doctest::Approx(lm).epsilon(1e-12));
        CHECK(log_abs_expect_angle(v + 1, alpha) == doctest::Approx(lm).epsilon(1e-12));
        CHECK(m == doctest::Approx(std::exp(lm)).epsilon(1e-12));
      }
  }

  SUBCASE("nearly constant at large alpha") {
    for (double v : {0.0, 0.2, 0.5})
      CHECK(std::abs(expect_angle(0.0, v, 100.0)) == doctest::Approx(std::exp(-pi * pi / 200)).epsilon(1e-14));
    CHECK(std::exp(-pi * pi / 200) == doctest::Approx(0.9518).epsilon(1e-4));
  }
}

TEST_CASE("momentum expectation") {
  SUBCASE("pinned at v = 0 and v = 1/2") {
    for (double alpha : kAlphas) {
      const auto g = CircleGeometry::from_alpha(alpha, 1.0, 2 * pi, 0.45);
      for (double v : {0.0, 0.5, -1.5, 2.0}) {
        const double p = g.momentum_from_reduced(v);
        CHECK(std::abs(expect_momentum(p, g) - p) < 1e-12 * g.hbar() / g.a());
      }
    }
  }

  SUBCASE("closed forms against the coefficient series") {
    for (double alpha : {0.1, 1.0, 5.0, 15.0, 100.0}) {
      const CircleGeometry g(1.7, 0.9, 2 * alpha * 0.6 / (1.7 * 1.7), 0.6);
      for (double v : {0.05, 0.2, 0.35, 0.7}) {
        const double p = g.momentum_from_reduced(v);
        CHECK(rel(expect_momentum(p, g), momentum_moment(p, g, 1)) < 1e-10);
        CHECK(rel(expect_momentum_sq(p, g), momentum_moment(p, g, 2)) < 1e-9);
        CHECK(expect_momentum_sq(p, g) >= expect_momentum(p, g) * expect_momentum(p, g));
      }
    }
  }

  SUBCASE("odd about the lattice points and covariant under p shifts") {
    const auto g = CircleGeometry::from_alpha(2.0, 1.0, 2 * pi, 0.3);
    for (double v : {0.1, 0.3}) {
      const double plus = expect_momentum(g.momentum_from_reduced(v), g) - g.hbar() * g.k();
      const double minus = expect_momentum(g.momentum_from_reduced(-v), g) - g.hbar() * g.k();
      CHECK(plus == doctest::Approx(-minus).epsilon(1e-12));
      const double p = g.momentum_from_reduced(v);
      CHECK(expect_momentum(p + g.momentum_quantum(), g) ==
            doctest::Approx(expect_momentum(p, g) + g.momentum_quantum()).epsilon(1e-12));
      CHECK(momentum_variance(p + g.momentum_quantum(), g) == doctest::Approx(momentum_variance(p, g)).epsilon(1e-12));
    }
  }

  SUBCASE("staircase at small alpha") {
    const auto small = CircleGeometry::from_alpha(0.01);
    const auto reduced = [&](const CircleGeometry& g, double v) {
      return g.reduced_momentum(expect_momentum(g.momentum_from_reduced(v), g));
    };
    CHECK(std::abs(reduced(small, 0.25)) < 1e-12);
    CHECK(std::abs(reduced(small, 0.75) - 1.0) < 1e-12);
    CHECK(std::abs(reduced(small, 1.3) - 1.0) < 1e-12);
    const auto large = CircleGeometry::from_alpha(15.0);
    CHECK(std::abs(reduced(large, 0.25) - 0.25) < 1e-2);
  }

  SUBCASE("variance of the standard coherent state at large alpha") {
    const auto g = CircleGeometry::from_alpha(1e3, 1.0, 2 * pi, 0.2);
    for (double v : {0.0, 0.3})
      CHECK(momentum_variance(g.momentum_from_reduced(v), g) ==
            doctest::Approx(g.omega() * g.hbar() / 2).epsilon(1e-12));
  }
}

TEST_CASE("uncertainty function") {
  SUBCASE("small-alpha limits") {
    const auto g = CircleGeometry::from_alpha(0.01);
    CHECK(uncertainty_report(0.0, g).delta_fn == doctest::Approx(std::sqrt(2.0) / 2).epsilon(0.01));
    CHECK(uncertainty_report(0.5, g).delta_fn == doctest::Approx(std::sqrt(3.0) / 2).epsilon(0.01));
    CHECK(uncertainty_report(0.25, g).delta_fn == doctest::Approx(1.0).epsilon(0.01));
  }

  SUBCASE("large alpha approaches the minimum") {
    const double alpha = 100.0;
    const auto g = CircleGeometry::from_alpha(alpha);
    const double limit = std::sqrt(alpha * std::expm1(pi * pi / alpha)) / (2 * pi);
    for (double v : linspace(0.0, 0.5, 11)) {
      const auto r = uncertainty_report(v, g);
      CHECK(r.delta_fn == doctest::Approx(limit).epsilon(1e-12));
      CHECK(r.delta_fn < 0.52);
      CHECK(r.delta_fn > 0.5);
    }
  }

  SUBCASE("band, evenness, periodicity and the two routes") {
    for (double alpha : kAlphas) {
      const auto g = CircleGeometry::from_alpha(alpha);
      for (double v : linspace(0.0, 0.5, 11)) {
        const auto r = uncertainty_report(v, g);
        CHECK(r.delta_fn > r.bound_lo);
        // at small α, Δ approaches ℏ closer than the ~1e-13 log-domain rounding
        CHECK(r.delta_fn <= r.bound_hi * (1 + 1e-12));
        if (alpha >= 1.0) {
          CHECK(r.delta_fn - r.bound_lo > 1e-6);
          CHECK(r.bound_hi - r.delta_fn > 1e-6);
        }
        CHECK(uncertainty_route_deviation(r) < 1e-10);
        CHECK(r.delta_E * r.delta_E == doctest::Approx(1.0 - r.abs_E * r.abs_E).epsilon(1e-12));
        CHECK(uncertainty_report(-v, g).delta_fn == doctest::Approx(r.delta_fn).epsilon(1e-12));
        CHECK(uncertainty_report(v + 1, g).delta_fn == doctest::Approx(r.delta_fn).epsilon(1e-12));
      }
    }
  }

  SUBCASE("units follow hbar") {
    const auto g1 = CircleGeometry::from_alpha(3.0, 1.0);
    const auto g2 = CircleGeometry::from_alpha(3.0, 0.25);
    CHECK(uncertainty_report(0.2, g1).delta_fn == doctest::Approx(uncertainty_report(0.2, g2).delta_fn).epsilon(1e-13));
  }

  SUBCASE("shrinking momentum spread comes with a shrinking angle expectation") {
    double prev_dp = 1e300, prev_e = 2.0;
    for (double alpha : {15.0, 5.0, 1.0, 0.1}) {
      const auto r = uncertainty_report(0.25, CircleGeometry::from_alpha(alpha));
      CHECK(r.delta_P < prev_dp);
      CHECK(r.abs_E < prev_e);
      prev_dp = r.delta_P;
      prev_e = r.abs_E;
    }
  }
}

TEST_CASE("grid helpers") {
  const auto g = linspace(0.0, 0.5, 51);
  REQUIRE(g.size() == 51);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 0.5);
  CHECK(linspace(0.3, 0.3, 1) == std::vector<double>{0.3});
  const auto sq = sweep(g, [](double x) { return x * x; });
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(sq[i] == g[i] * g[i]);
}
