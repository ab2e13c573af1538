#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "circlecs/errors.hpp"
#include "circlecs/theta.hpp"
#include "oracles.hpp"

using namespace circlecs;
using oracle::rel;
using std::numbers::pi;

TEST_CASE("theta3 with zero nome is 1") {
  const Nome zero(0.0);
  for (cplx z : {cplx(0.0), cplx(1.3, -0.4), cplx(-7.0, 2.0)}) {
    const auto r = theta3(z, zero);
    CHECK(r.value == cplx(1.0));
    CHECK(r.terms_used == 1);
  }
}

TEST_CASE("theta3 and derivatives match naive sums") {
  const Nome rho(0.1);
  const double expected0 = 1 + 2 * 0.1 + 2 * 1e-4 + 2 * 1e-9 + 2 * 1e-16;
  CHECK(std::abs(theta3(0.0, rho).value - expected0) < 1e-16);
  CHECK(std::abs(theta3(0.0, rho).value - oracle::naive_theta(0.0, 0.1)) < 4e-16);

  CHECK(theta3_d1(0.0, rho).value == cplx(0.0));
  const cplx d1_ref = cplx(0.0, 2.0) * oracle::naive_theta(pi / 2, 0.1, 50, 1);
  CHECK(std::abs(theta3_d1(pi / 2, rho).value - d1_ref) < 1e-15);

  CHECK(theta3_d2(0.0, Nome(0.0)).value == cplx(0.0));
  const double d2_ref = -8.0 * (0.1 + 4e-4 + 9e-9 + 16e-16);
  CHECK(std::abs(theta3_d2(0.0, rho).value - d2_ref) < 1e-15);

  for (double r : {0.05, 0.3, 0.7}) {
    for (cplx z : {cplx(0.2, 0.1), cplx(1.1, -0.3), cplx(-2.5, 0.05)}) {
      CHECK(rel(theta3(z, Nome(r)).value, oracle::naive_theta(z, r, 200)) < 1e-13);
      CHECK(rel(theta3_d1(z, Nome(r)).value, cplx(0, 2) * oracle::naive_theta(z, r, 200, 1)) < 1e-12);
      CHECK(rel(theta3_d2(z, Nome(r)).value, -4.0 * oracle::naive_theta(z, r, 200, 2)) < 1e-12);
    }
  }
}

TEST_CASE("theta3 symmetries") {
  for (double r : {0.02, 0.4, 0.85}) {
    const Nome rho(r);
    for (cplx z : {cplx(0.3, 0.2), cplx(-1.7, 0.5), cplx(2.9, -0.1)}) {
      const double scale = oracle::theta_abs_scale(z, r);
      CHECK(std::abs(theta3(z + pi, rho).value - theta3(z, rho).value) < 1e-14 * scale);
      CHECK(std::abs(theta3(-z, rho).value - theta3(z, rho).value) < 1e-14 * scale);
      CHECK(std::abs(theta3_d1(-z, rho).value + theta3_d1(z, rho).value) < 1e-13 * scale);
    }
    for (double x : {0.0, 0.4, pi / 2, 2.0}) {
      const cplx v = theta3(x, rho).value;
      CHECK(v.imag() == doctest::Approx(0.0));
      CHECK(v.real() > 0.0);
    }
  }
}

TEST_CASE("derivatives match central differences") {
  for (double r : {0.1, 0.5, 0.9}) {
    const Nome rho(r);
    const auto f = [&](cplx z) { return theta3(z, rho).value; };
    for (cplx z : {cplx(0.3, 0.1), cplx(1.2, -0.2)}) {
      // relative to the modulus scale of the series, since θ nearly vanishes near π/2
      const double scale = oracle::theta_abs_scale(z, r);
      CHECK(std::abs(theta3_d1(z, rho).value - oracle::five_point_d1(f, z, 3e-4)) < 1e-8 * scale);
      CHECK(std::abs(theta3_d2(z, rho).value - oracle::five_point_d2(f, z, 1e-3)) < 1e-8 * scale);
    }
  }
  // plain O(h²) central differences at a small nome
  const Nome rho(0.1);
  const auto f = [&](cplx z) { return theta3(z, rho).value; };
  const cplx z(0.8, 0.05);
  CHECK(rel(theta3_d1(z, rho).value, oracle::central_difference(f, z, 1e-5)) < 1e-9);
  CHECK(rel(theta3_d2(z, rho).value, oracle::second_difference(f, z, 1e-4)) < 1e-6);
}

TEST_CASE("tail bound and error conditions") {
  const auto r = theta3(cplx(0.4, 0.3), Nome(0.6), 1e-12);
  CHECK(r.tail_bound <= 1e-12 * std::max(1.0, std::abs(r.value)));
  CHECK(r.terms_used >= 1);
  CHECK(std::abs(r.value - oracle::naive_theta(cplx(0.4, 0.3), 0.6, 200)) <= 2e-12);

  CHECK_THROWS_AS(Nome(1.0), NomeOutOfRange);
  CHECK_THROWS_AS(Nome(-1.2), NomeOutOfRange);
  CHECK_THROWS_AS(theta3(0.0, Nome::from_log(-1e-9)), NonConvergence);
  CHECK_NOTHROW(theta3_accelerated(0.0, Nome::from_log(-1e-9)));
}

TEST_CASE("accelerated path") {
  const double switch_rho = modular_switch_nome();
  CHECK(switch_rho == doctest::Approx(std::exp(-pi)));

  SUBCASE("pass-through below the switch") {
    for (double r : {0.0, 0.01, 0.04}) {
      const cplx z(0.7, 0.2);
      CHECK(theta3_accelerated(z, Nome(r)).value == theta3(z, Nome(r)).value);
    }
  }

  SUBCASE("agrees with direct series where both converge") {
    for (double r : {0.05, 0.3, 0.8, 0.97}) {
      for (cplx z : {cplx(0.0), cplx(0.9, 0.3), cplx(-2.2, -0.15)}) {
        const auto acc = theta3_accelerated(z, Nome(r));
        const auto dir = theta3(z, Nome(r));
        CHECK(std::abs(acc.value - dir.value) <= 1e-13 * oracle::theta_abs_scale(z, r));
      }
    }
  }

  SUBCASE("negative nome") {
    for (double r : {-0.1, -0.6, -0.95}) {
      const cplx z(0.4, 0.1);
      CHECK(std::abs(theta3_accelerated(z, Nome(r)).value - oracle::naive_theta(z, r, 400)) <
            1e-13 * oracle::theta_abs_scale(z, r));
    }
  }

  SUBCASE("nome close to one needs few terms") {
    const Nome rho = Nome::from_log(-pi * 0.01);
    const auto acc = theta3_accelerated(0.0, rho);
    const int naive_terms = oracle::naive_theta_terms(rho.rho(), 1e-16);
    CHECK(naive_terms > 60);
    CHECK(acc.terms_used <= 5);
    CHECK(rel(acc.value, cplx(10.0)) < 1e-13);  // θ(0; e^{-π/100}) = 10 up to e^{-100π}
  }

  SUBCASE("scaled form survives overflow") {
    const Nome rho = Nome::from_log(-1e-4);
    const auto s = theta3_accelerated_scaled(cplx(0.0, 10.0), rho);
    CHECK(std::isfinite(s.log_scale));
    CHECK(s.log_scale > 700.0);  // e^{z²/ln ρ ...} overflows a double
    const auto small = theta3_accelerated_scaled(cplx(0.3, 0.1), Nome(0.7));
    CHECK(rel(small.value(), theta3_accelerated(cplx(0.3, 0.1), Nome(0.7)).value) < 1e-14);
  }
}

TEST_CASE("functional equation between the dual nomes") {
  // θ(z; e^{-2π²/α}) = √(α/2π) e^{-αz²/(2π²)} θ(-iαz/(2π); e^{-α/2})
  for (double alpha : {0.01, 0.3, 2.0, 100.0}) {
    for (cplx z : {cplx(0.0), cplx(0.3, 0.1), cplx(0.9, -0.05), cplx(1.4, 0.0)}) {
      const cplx lhs = theta3(z, Nome::from_log(-2 * pi * pi / alpha)).value;
      const cplx rhs = std::sqrt(alpha / (2 * pi)) * std::exp(-alpha * z * z / (2 * pi * pi)) *
                       theta3(cplx(0, -alpha / (2 * pi)) * z, Nome::from_log(-alpha / 2)).value;
      CHECK(rel(lhs, rhs) < 1e-10);
    }
  }
}

TEST_CASE("real profile") {
  for (double lr : {-0.005, -0.3, -3.0}) {
    const Nome rho = Nome::from_log(lr);
    for (double x : {0.0, 0.5, 1.3}) {
      const auto prof = theta3_real_profile(x, rho);
      const double th = theta3_accelerated(x, rho).value.real();
      CHECK(prof.log_value == doctest::Approx(std::log(th)).epsilon(1e-12));
      if (lr < -0.1) {
        const double d1 = theta3_d1(x, rho).value.real();
        const double d2 = theta3_d2(x, rho).value.real();
        CHECK(prof.log_derivative == doctest::Approx(d1 / th).epsilon(1e-10).scale(1.0));
        CHECK(prof.curvature ==
              doctest::Approx(d2 / th - (d1 / th) * (d1 / th)).epsilon(1e-9).scale(1.0));
      }
      CHECK(std::exp(prof.log_curvature_excess) ==
            doctest::Approx(prof.curvature + 2.0 / (-lr)).epsilon(1e-8));
    }
  }
}

TEST_CASE("n-dimensional theta") {
  SUBCASE("one-dimensional reduction") {
    Eigen::MatrixXcd om(1, 1);
    om(0, 0) = cplx(0.2, 0.7);
    const cplx z[1] = {cplx(0.3, -0.1)};
    const cplx rho = std::exp(cplx(0, pi) * om(0, 0));
    // complex nome: compare with the naive sum written out
    cplx ref{};
    for (int n = -60; n <= 60; ++n) ref += std::pow(rho, double(n) * n) * std::exp(cplx(0, 2.0 * n) * z[0]);
    CHECK(rel(theta_nd(z, PeriodMatrix(om)).value, ref) < 1e-13);
    om(0, 0) = cplx(0.0, 0.7);
    CHECK(rel(theta_nd(z, PeriodMatrix(om)).value, theta3(z[0], Nome(std::exp(-pi * 0.7))).value) < 1e-13);
  }

  SUBCASE("diagonal period matrix factorizes") {
    Eigen::MatrixXcd om = Eigen::MatrixXcd::Zero(2, 2);
    om(0, 0) = cplx(0, 1.0);
    om(1, 1) = cplx(0, 2.0);
    const cplx z[2] = {cplx(0.2), cplx(-0.3)};
    const cplx prod = theta3(z[0], Nome(std::exp(-pi))).value * theta3(z[1], Nome(std::exp(-2 * pi))).value;
    CHECK(rel(theta_nd(z, PeriodMatrix(om)).value, prod) < 1e-12);
    const cplx o[2][2] = {{om(0, 0), om(0, 1)}, {om(1, 0), om(1, 1)}};
    CHECK(rel(theta_nd(z, PeriodMatrix(om)).value, oracle::naive_theta_2d(o, z, 20)) < 1e-13);
  }

  SUBCASE("coupled period matrix against brute force") {
    Eigen::MatrixXcd om(2, 2);
    om << cplx(0.1, 0.6), cplx(0.05, 0.25), cplx(0.05, 0.25), cplx(-0.2, 0.8);
    const cplx z[2] = {cplx(0.4, 0.1), cplx(-0.7, 0.2)};
    const cplx o[2][2] = {{om(0, 0), om(0, 1)}, {om(1, 0), om(1, 1)}};
    CHECK(rel(theta_nd(z, PeriodMatrix(om)).value, oracle::naive_theta_2d(o, z, 40)) < 1e-12);
  }

  SUBCASE("invalid period matrices") {
    Eigen::MatrixXcd om(2, 2);
    om << cplx(0, 1), cplx(0, 2), cplx(0, 2), cplx(0, 1);
    CHECK_THROWS_AS(PeriodMatrix{om}, PeriodNotConvergent);
    Eigen::MatrixXcd asym(2, 2);
    asym << cplx(0, 1), cplx(0.1, 0), cplx(0.3, 0), cplx(0, 1);
    CHECK_THROWS(PeriodMatrix{asym});
    Eigen::MatrixXcd ok = Eigen::MatrixXcd::Identity(2, 2) * cplx(0, 1);
    const cplx z1[1] = {cplx(0)};
    CHECK_THROWS_AS(theta_nd(z1, PeriodMatrix(ok)), DimensionMismatch);
  }
}
