#include <doctest.h>

#include <cmath>
#include <numbers>

#include "circlecs/circle_cs.hpp"
#include "circlecs/errors.hpp"
#include "circlecs/wbz.hpp"
#include "oracles.hpp"

using namespace circlecs;
using std::numbers::pi;

TEST_CASE("fiducial matches the explicit Gaussian") {
  const CircleGeometry g(2.0, 0.5, 3.0, 0.8);
  const auto eta = gaussian_fiducial(0.4, -1.1, g);
  REQUIRE(eta.support_hint.has_value());
  for (double x : {-1.0, 0.0, 0.4, 2.3})
    CHECK(std::abs(eta.eval(x) - oracle::gaussian_cs(x, 0.4, -1.1, 3.0, 0.8)) < 1e-15);
  CHECK(std::abs(eta.eval(0.4 + *eta.support_hint)) < 1e-16 * std::abs(eta.eval(0.4)) * 2);
}

TEST_CASE("compactly supported input gives a single term") {
  const CircleGeometry g(1.0, 0.7, 1.0, 1.0);
  const LineFunction bump{[](double x) -> cplx { return (x > 0.1 && x < 0.9) ? cplx(x * x, -x) : 0.0; }, 0.9};
  for (double q : {0.2, 0.5, 0.85}) CHECK(wbz_forward(bump, q, g.k(), g) == cplx(q * q, -q));
}

TEST_CASE("forward transform matches the brute-force Zak sum and the CS wavefunction") {
  const CircleGeometry g(2 * pi, 0.3, 0.05, 1.0);
  const auto eta = gaussian_fiducial(1.0, 0.7, g);
  for (double q : {0.0, 1.5, 4.0, 6.0})
    CHECK(oracle::rel(wbz_forward(eta, q, g.k(), g),
                      oracle::zak_sum(eta.eval, q, g.k(), g.a(), 40)) < 1e-13);
  const auto eta0 = gaussian_fiducial(0.0, 0.0, g);
  for (double q : {0.0, 2.0, 5.5})
    CHECK(oracle::rel(wbz_forward(eta0, q, g.k(), g), cs_wavefunction({0.0, 0.0}, q, g)) < 1e-12);
}

TEST_CASE("quasiperiodicity in q") {
  const CircleGeometry g(1.7, 1.2, 2.0, 1.0);
  const auto eta = gaussian_fiducial(0.3, 1.0, g);
  for (double q : {0.1, 0.9, 1.6}) {
    const cplx base = wbz_forward(eta, q, g.k(), g);
    const cplx shifted = wbz_forward(eta, q + g.a(), g.k(), g);
    CHECK(std::abs(shifted - std::exp(cplx(0, g.a() * g.k())) * base) < 1e-15);
  }
}

TEST_CASE("adaptive summation and slow decay") {
  const CircleGeometry g(1.0, 0.0, 1.0, 1.0);
  const LineFunction fast{[](double x) -> cplx { return std::exp(-std::abs(x)); }, std::nullopt};
  // Σ e^{-|q-n|} in closed form for q ∈ [0,1)
  const double q = 0.3;
  const double exact = (std::exp(-q) + std::exp(q - 1.0)) / (1.0 - std::exp(-1.0));
  CHECK(std::abs(wbz_forward(fast, q, 0.0, g) - exact) < 1e-13);

  const LineFunction slow{[](double x) -> cplx { return 1.0 / std::pow(1.0 + x * x, 0.3); }, std::nullopt};
  CHECK_THROWS_AS(wbz_forward(slow, 0.5, 0.0, g), SlowDecay);
}

TEST_CASE("inverse transform") {
  const CircleGeometry g(2.0, 0.6, 1.3, 1.0);
  const auto eta = gaussian_fiducial(0.2, -0.4, g);
  const ZakFunction F = [&](double q, double k) { return wbz_forward(eta, q, k, g); };

  SUBCASE("round trip at points outside the fundamental cell") {
    for (double x : {-g.a() / 2, 0.3 * g.a(), 1.7 * g.a()}) {
      const int n = static_cast<int>(std::ceil(-x / g.a()));
      const double q = x + n * g.a();  // x = q - n a with q ∈ [0, a)
      REQUIRE(q >= 0.0);
      REQUIRE(q < g.a());
      CHECK(std::abs(wbz_inverse(F, q, n, g) - eta.eval(x)) < 1e-10 * std::max(1e-3, std::abs(eta.eval(x))));
    }
  }

  SUBCASE("Fourier orthogonality") {
    const ZakFunction flat = [](double q, double) { return cplx(std::sin(q), 1.0); };
    CHECK(std::abs(wbz_inverse(flat, 0.7, 0, g) - cplx(std::sin(0.7), 1.0)) < 1e-15);
    for (int n : {-2, 1, 3}) CHECK(std::abs(wbz_inverse(flat, 0.7, n, g)) < 1e-15);
  }
}

TEST_CASE("unitarity of the fibre decomposition") {
  const CircleGeometry g(2.0, 0.0, 1.0, 1.0);
  const auto eta = gaussian_fiducial(0.5, 2.0, g);
  const auto inner = [&](double k) {
    return oracle::trapezoid_periodic(
        [&](double q) -> cplx { return std::norm(wbz_forward(eta, q, k, g)); }, 0.0, g.a(), 64);
  };
  const cplx total =
      g.a() / (2 * pi) * oracle::trapezoid_periodic(inner, 0.0, 2 * pi / g.a(), 32);
  CHECK(std::abs(total - 1.0) < 1e-8);
}
