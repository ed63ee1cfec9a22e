#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ringq/errors.hpp"
#include "ringq/profiles.hpp"
#include "ringq/qprofile.hpp"
#include "ringq/rng.hpp"

using namespace ringq;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;
}  // namespace

TEST_CASE("spherical means of elementary profiles") {
  auto constant = make_radial_profile(2, [](double) { return 5.0; });
  CHECK(q_mean(constant, 0.3) == doctest::Approx(5.0));

  // Fields constant on origin-centered spheres, via quadrature (no exact
  // mean attached).
  auto norm_sq = make_profile(
      3,
      [](std::span<const double> x) {
        return x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
      },
      {0.0, 0.0, 0.0});
  CHECK(q_mean(norm_sq, 0.5) == doctest::Approx(0.25).epsilon(1e-12));

  auto log_profile = make_profile(
      2,
      [](std::span<const double> x) {
        return std::log(1.0 / std::hypot(x[0], x[1]));
      },
      {0.0, 0.0});
  CHECK(q_mean(log_profile, 0.1) ==
        doctest::Approx(std::log(10.0)).epsilon(1e-12));

  CHECK_THROWS_AS(q_mean(constant, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(q_mean(constant, 2.0), std::invalid_argument);
}

TEST_CASE("exact radial mean is validated against quadrature") {
  auto good = make_radial_profile(2, [](double r) { return 1.0 + r * r; });
  CHECK_NOTHROW(validate_profile(good));

  auto bad = make_radial_profile(2, [](double r) { return 1.0 + r * r; });
  bad.exact_radial_mean = [](double r) { return 1.0 + r; };
  CHECK_THROWS_AS(validate_profile(bad), std::invalid_argument);
}

TEST_CASE("admissibility integral basics") {
  PsiFunction flat;
  flat.evaluate = [](double) { return 1.0 / 0.4; };
  CHECK(I_integral(flat, 0.1, 0.5).value == doctest::Approx(1.0).epsilon(1e-12));

  PsiFunction zero;
  zero.evaluate = [](double) { return 0.0; };
  const auto none = I_integral(zero, 0.1, 0.5);
  CHECK(none.value == 0.0);
  CHECK_FALSE(none.diverged);

  CHECK_THROWS_AS(I_integral(flat, 0.5, 0.1), std::invalid_argument);
}

TEST_CASE("canonical density and its closed-form integral") {
  CHECK(psi_canonical(1.0 / kE) == doctest::Approx(kE).epsilon(1e-14));
  CHECK(psi_canonical(std::exp(-2.0)) ==
        doctest::Approx(kE * kE / 2.0).epsilon(1e-14));
  CHECK_THROWS_AS(psi_canonical(1.0), std::invalid_argument);

  const auto psi = make_psi_canonical();
  CHECK(I_integral(psi, std::exp(-3.0), std::exp(-1.0)).value ==
        doctest::Approx(std::log(3.0)).epsilon(1e-12));

  // log(log(1/eps)/log(1/eps0)) across the grid of the closed form.
  for (double eps0 : {std::exp(-1.0), std::exp(-2.0)}) {
    for (int k = 3; k <= 8; ++k) {
      const double eps = std::exp(-static_cast<double>(k));
      if (eps >= eps0) continue;
      const double closed =
          std::log(std::log(1.0 / eps) / std::log(1.0 / eps0));
      CHECK(I_integral(psi, eps, eps0).value ==
            doctest::Approx(closed).epsilon(1e-8));
    }
  }
}

TEST_CASE("psi built from a profile") {
  auto unit = make_radial_profile(2, [](double) { return 1.0; });
  auto psi = psi_from_q(unit, 0.01, 0.1);
  CHECK(psi(0.05) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(psi(0.005) == 0.0);  // outside support
  CHECK(I_integral(psi, 0.01, 0.1).value ==
        doctest::Approx(std::log(10.0)).epsilon(1e-10));

  auto logsq = make_radial_profile(2, [](double r) {
    const double l = std::log(1.0 / r);
    return l * l;
  });
  auto psi2 = psi_from_q(logsq, 0.01, 0.1);
  const double t = 0.05;
  CHECK(psi2(t) ==
        doctest::Approx(1.0 / (t * std::pow(std::log(1.0 / t), 2.0)))
            .epsilon(1e-12));

  auto vanishing = make_radial_profile(2, [](double) { return 0.0; });
  CHECK_THROWS_AS(psi_from_q(vanishing, 0.01, 0.1), DegenerateProfileError);
}

TEST_CASE("weighted annulus integral reduces to omega times I") {
  // For radial Q and psi = 1/(t q^{1/(n-1)}), the annulus integral of
  // Q psi^n collapses to omega_{n-1} I.
  Rng rng(42);
  for (int n : {2, 3}) {
    std::vector<QProfile> profiles;
    profiles.push_back(make_radial_profile(n, [](double) { return 1.0; }));
    profiles.push_back(make_radial_profile(
        n, [](double r) { return std::log(1.0 / r); }, 0.35));
    profiles.push_back(make_radial_profile(
        n,
        [](double r) {
          const double l = std::log(1.0 / r);
          return l * l;
        },
        0.35));
    for (const auto& profile : profiles) {
      for (int trial = 0; trial < 4; ++trial) {
        const double eps0 = rng.uniform(0.05, 0.3);
        const double eps = eps0 * std::pow(10.0, -rng.uniform(0.5, 2.0));
        auto psi = psi_from_q(profile, eps, eps0);
        const double I = I_integral(psi, eps, eps0).value;
        const auto field = profile.evaluate;
        const double weighted = annulus_integral(
            [&](std::span<const double> x) {
              double r2 = 0.0;
              for (double v : x) r2 += v * v;
              return field(x) * std::pow(psi(std::sqrt(r2)), n);
            },
            profile.center, eps, eps0, profile.rule);
        CHECK(weighted ==
              doctest::Approx(omega(n) * I).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("dini probe classifies the canonical profiles") {
  // Constant means diverge for every tested c.
  for (double c : {0.5, 1.0, 2.0, 5.0}) {
    auto profile = make_radial_profile(2, [c](double) { return c; });
    const auto result = dini_integral(profile, 0.3);
    CHECK(result.diverges);
  }

  // q = log^2(1/t), eps0 = 1/e: converges with value 1.
  auto logsq = make_radial_profile(2, [](double r) {
    const double l = std::log(1.0 / r);
    return l * l;
  });
  const auto conv = dini_integral(logsq, std::exp(-1.0));
  CHECK_FALSE(conv.diverges);
  CHECK(conv.value == doctest::Approx(1.0).epsilon(0.01));

  // q = log(1/t): the log-log divergence boundary.
  auto logp = make_radial_profile(2, [](double r) { return std::log(1.0 / r); });
  CHECK(dini_integral(logp, std::exp(-1.0)).diverges);
}

TEST_CASE("dini exponent family across dimensions") {
  for (int n : {2, 3}) {
    for (double s : {0.0, 0.5, 1.0}) {
      const double expo = (1.0 + s) * (n - 1);
      auto profile = make_radial_profile(n, [expo](double r) {
        return std::pow(std::log(1.0 / r), expo);
      });
      const auto result = dini_integral(profile, std::exp(-1.0));
      CHECK(result.diverges == (s == 0.0));
    }
  }
}

TEST_CASE("mean oscillation of elementary fields") {
  const double x0[2] = {0.0, 0.0};
  auto rule = QuadratureRule::for_dim(2);

  const ScalarField constant = [](std::span<const double>) { return 3.25; };
  CHECK(std::abs(fmo_oscillation(constant, std::span(x0, 2), 0.25, rule)) <
        1e-9);

  const double M = 2.5;
  const ScalarField bounded = [M](std::span<const double> x) {
    return M * std::sin(3.0 * x[0]) * std::cos(x[1]);
  };
  CHECK(fmo_oscillation(bounded, std::span(x0, 2), 0.5, rule) <=
        2.0 * M + 1e-12);

  // log(1/|x|) has oscillation exactly 1/e about the origin in the plane,
  // independent of the ball radius.
  const ScalarField log_field = [](std::span<const double> x) {
    return std::log(1.0 / std::hypot(x[0], x[1]));
  };
  for (int k = 4; k <= 20; k += 4) {
    const double eps = std::pow(0.5, k);
    CHECK(fmo_oscillation(log_field, std::span(x0, 2), eps, rule) ==
          doctest::Approx(1.0 / kE).epsilon(1e-3));
  }

  // Invariance under adding a constant.
  const ScalarField shifted = [](std::span<const double> x) {
    return std::log(1.0 / std::hypot(x[0], x[1])) + 17.3;
  };
  const double a = fmo_oscillation(log_field, std::span(x0, 2), 0.125, rule);
  const double b = fmo_oscillation(shifted, std::span(x0, 2), 0.125, rule);
  CHECK(std::abs(a - b) < 1e-9);
}

TEST_CASE("sufficient-condition report on canonical profiles") {
  auto constant = make_radial_profile(2, [](double) { return 4.0; });
  const auto rep_const = check_sufficient_conditions(constant, std::exp(-1.0));
  CHECK(rep_const.log_growth_holds);
  CHECK(rep_const.dini_diverges);
  CHECK(rep_const.fmo_holds);

  auto logsq = make_radial_profile(2, [](double r) {
    const double l = std::log(1.0 / r);
    return l * l;
  });
  const auto rep_logsq = check_sufficient_conditions(logsq, std::exp(-1.0));
  CHECK_FALSE(rep_logsq.dini_diverges);

  auto logp = make_radial_profile(2, [](double r) { return std::log(1.0 / r); });
  const auto rep_log = check_sufficient_conditions(logp, std::exp(-1.0));
  CHECK(rep_log.log_growth_holds);
  CHECK(rep_log.log_growth_constant == doctest::Approx(1.0).epsilon(0.05));
  CHECK(rep_log.dini_diverges);
}

TEST_CASE("little-o probe along halving inner radii") {
  const double eps0 = 0.9 * std::exp(-1.0);

  // FMO-style witness with the canonical density.
  auto logp = make_radial_profile(2, [](double r) { return std::log(1.0 / r); });
  const auto pos = check_little_o_condition(logp, make_psi_canonical(), eps0, 10);
  CHECK(pos.trends_to_zero);
  CHECK(pos.ratio.back() < pos.ratio.front());

  // Unit profile with its own density: ratio = omega / I^{n-1}.
  auto unit = make_radial_profile(2, [](double) { return 1.0; });
  auto psi_unit = psi_from_q(unit, eps0 * std::pow(0.5, 10), eps0);
  const auto unit_rep = check_little_o_condition(unit, psi_unit, eps0, 10);
  CHECK(unit_rep.trends_to_zero);
  const double I_last = std::log(1.0 / unit_rep.eps.back()) + std::log(eps0);
  CHECK(unit_rep.ratio.back() ==
        doctest::Approx(omega(2) / I_last).epsilon(1e-6));

  // Exponential growth: no decay (short horizon keeps values finite).
  auto expp = make_radial_profile(2, [](double r) { return std::exp(1.0 / r); });
  const auto neg = check_little_o_condition(expp, make_psi_canonical(), 0.3, 6);
  CHECK_FALSE(neg.trends_to_zero);
}

TEST_CASE("named profile registry") {
  auto c2 = profile_by_name("const:2", 2);
  CHECK(q_mean(c2, 0.5) == doctest::Approx(2.0));
  auto lg = profile_by_name("log", 2);
  CHECK(q_mean(lg, 0.1) == doctest::Approx(std::log(10.0)));
  auto lg2 = profile_by_name("log2", 3);
  CHECK(q_mean(lg2, 0.5) == doctest::Approx(1.0));
  auto pl = profile_by_name("powlog:2", 3);
  CHECK(q_mean(pl, 0.1) ==
        doctest::Approx(2.0 * std::pow(std::log(10.0), 2)));
  auto fam = family_profile_by_name("log", 2);
  CHECK(q_mean(fam, 0.9) == doctest::Approx(1.0));
  CHECK_THROWS_AS(profile_by_name("nope", 2), std::invalid_argument);
}
