#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ringq/geom.hpp"
#include "ringq/quadrature.hpp"
#include "ringq/rng.hpp"

using namespace ringq;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("sphere areas and ball volumes") {
  CHECK(omega(2) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
  CHECK(omega(3) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
  CHECK(omega(4) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));
  CHECK(ball_volume(2) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(ball_volume(3) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
  for (int n = 2; n <= 6; ++n)
    CHECK(omega(n) / ball_volume(n) == doctest::Approx(n).epsilon(1e-13));
  CHECK_THROWS_AS(omega(1), std::invalid_argument);
  CHECK_THROWS_AS(ball_volume(1), std::invalid_argument);
}

TEST_CASE("omega(4) against a Monte Carlo ball-volume estimate") {
  // Independent route: V_4 estimated by rejection sampling, omega_3 = 4 V_4.
  Rng rng(20240917);
  const int budget = 400000;
  int inside = 0;
  for (int i = 0; i < budget; ++i) {
    double s = 0.0;
    for (int d = 0; d < 4; ++d) {
      const double x = rng.uniform(-1.0, 1.0);
      s += x * x;
    }
    if (s <= 1.0) ++inside;
  }
  const double volume = 16.0 * inside / budget;
  CHECK(omega(4) == doctest::Approx(4.0 * volume).epsilon(0.01));
}

TEST_CASE("sphere integral normalization and symmetry") {
  const double x0_2[2] = {0.0, 0.0};
  const double x0_3[3] = {0.0, 0.0, 0.0};
  auto rule2 = QuadratureRule::for_dim(2);
  auto rule3 = QuadratureRule::for_dim(3);

  const ScalarField one = [](std::span<const double>) { return 1.0; };
  CHECK(sphere_integral(one, std::span(x0_2, 2), 2.0, rule2) ==
        doctest::Approx(4.0 * kPi).epsilon(1e-13));
  CHECK(sphere_integral(one, std::span(x0_3, 3), 1.0, rule3) ==
        doctest::Approx(4.0 * kPi).epsilon(1e-13));
  for (int n = 4; n <= 5; ++n) {
    std::vector<double> x0(n, 0.0);
    CHECK(sphere_integral(one, x0, 1.5, QuadratureRule::for_dim(n)) ==
          doctest::Approx(omega(n) * std::pow(1.5, n - 1)).epsilon(1e-12));
  }

  // Odd fields integrate to zero by node symmetry.
  const ScalarField odd1 = [](std::span<const double> x) { return x[0]; };
  const ScalarField odd2 = [](std::span<const double> x) {
    return x[0] * x[0] * x[0] * std::exp(x[1] * x[1]);
  };
  CHECK(std::abs(sphere_integral(odd1, std::span(x0_3, 3), 1.0, rule3)) <
        1e-8);
  CHECK(std::abs(sphere_integral(odd2, std::span(x0_2, 2), 1.0, rule2)) <
        1e-8);
  CHECK(std::abs(sphere_integral(odd2, std::span(x0_3, 3), 2.0, rule3)) <
        1e-8);

  // f = |x|^2 is constant on spheres about the origin.
  const ScalarField norm2 = [](std::span<const double> x) {
    return x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  };
  CHECK(sphere_integral(norm2, std::span(x0_3, 3), 1.0, rule3) ==
        doctest::Approx(4.0 * kPi).epsilon(1e-12));
}

TEST_CASE("annulus integrals with closed forms") {
  const double x0[2] = {0.0, 0.0};
  auto rule = QuadratureRule::for_dim(2);
  const ScalarField one = [](std::span<const double>) { return 1.0; };
  CHECK(annulus_integral(one, std::span(x0, 2), 1.0, 2.0, rule) ==
        doctest::Approx(3.0 * kPi).epsilon(1e-12));

  const ScalarField inv_r2 = [](std::span<const double> x) {
    return 1.0 / (x[0] * x[0] + x[1] * x[1]);
  };
  CHECK(annulus_integral(inv_r2, std::span(x0, 2), 1.0, std::numbers::e,
                         rule) == doctest::Approx(2.0 * kPi).epsilon(1e-12));

  CHECK_THROWS_AS(annulus_integral(one, std::span(x0, 2), 2.0, 1.0, rule),
                  std::invalid_argument);
}

TEST_CASE("annulus integral splits additively") {
  const double x0[3] = {0.0, 0.0, 0.0};
  auto rule = QuadratureRule::for_dim(3);
  const ScalarField f = [](std::span<const double> x) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    return std::exp(-r2) + x[0] * x[1];
  };
  const double whole = annulus_integral(f, std::span(x0, 3), 0.2, 1.7, rule);
  const double left = annulus_integral(f, std::span(x0, 3), 0.2, 0.9, rule);
  const double right = annulus_integral(f, std::span(x0, 3), 0.9, 1.7, rule);
  CHECK(whole ==
        doctest::Approx(left + right).epsilon(1e-10));
}

TEST_CASE("radially symmetric annulus integrand matches 1d quadrature") {
  const double x0[3] = {0.0, 0.0, 0.0};
  auto rule = QuadratureRule::for_dim(3);
  const ScalarField f = [](std::span<const double> x) {
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    return std::log(1.0 / r);
  };
  const double via_annulus =
      annulus_integral(f, std::span(x0, 3), 0.05, 0.8, rule);
  const double via_radial =
      omega(3) * radial_integral(
                     [](double t) { return std::log(1.0 / t) * t * t; }, 0.05,
                     0.8, rule.radial_points);
  CHECK(via_annulus == doctest::Approx(via_radial).epsilon(1e-12));
}

TEST_CASE("radial rule converges spectrally on a smooth integrand") {
  // g(t) = t^3 on (0.1, 2); exact value (2^4 - 0.1^4)/4.
  const auto g = [](double t) { return t * t * t; };
  const double exact = (16.0 - 1e-4) / 4.0;
  const double err8 = std::abs(radial_integral(g, 0.1, 2.0, 8) - exact);
  const double err16 = std::abs(radial_integral(g, 0.1, 2.0, 16) - exact);
  CHECK((err16 <= err8 / 10.0 || err16 < 1e-13 * exact));
}

TEST_CASE("quadrature rule validation") {
  QuadratureRule rule;
  rule.n = 2;
  rule.radial_points = 4;
  CHECK_THROWS_AS(rule.validate(), std::invalid_argument);
  rule.radial_points = 32;
  rule.sphere_samples = 32;
  CHECK_THROWS_AS(rule.validate(), std::invalid_argument);
}
