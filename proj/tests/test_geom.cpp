#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ringq/geom.hpp"
#include "ringq/rng.hpp"

using namespace ringq;

namespace {

ExtPoint random_finite(Rng& rng, int n, double span = 4.0) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(-span, span);
  return ExtPoint::finite(std::move(v));
}

}  // namespace

TEST_CASE("chordal distance closed-form values") {
  const auto zero = ExtPoint::finite({0.0, 0.0});
  const auto inf = ExtPoint::infinity(2);
  CHECK(chordal_distance(zero, inf) == doctest::Approx(1.0).epsilon(1e-14));

  const auto e1 = ExtPoint::finite({1.0, 0.0});
  const auto me1 = ExtPoint::finite({-1.0, 0.0});
  CHECK(chordal_distance(e1, me1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(chordal_distance(e1, e1) == 0.0);
  CHECK(chordal_distance(inf, inf) == 0.0);

  // h(x, infinity) = 1/sqrt(1+|x|^2)
  const auto p = ExtPoint::finite({3.0, 4.0});
  CHECK(chordal_distance(p, inf) ==
        doctest::Approx(1.0 / std::sqrt(26.0)).epsilon(1e-14));
}

TEST_CASE("chordal distance is a metric bounded by 1") {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 3);
    auto x = random_finite(rng, n);
    auto y = random_finite(rng, n);
    auto z = (trial % 5 == 0) ? ExtPoint::infinity(n) : random_finite(rng, n);
    const double dxy = chordal_distance(x, y);
    const double dyz = chordal_distance(y, z);
    const double dxz = chordal_distance(x, z);
    CHECK(dxy >= 0.0);
    CHECK(dxy <= 1.0 + 1e-15);
    CHECK(dxy == chordal_distance(y, x));
    CHECK(dxz <= dxy + dyz + 1e-12);
  }
}

TEST_CASE("dimension mismatch is rejected") {
  const auto a = ExtPoint::finite({1.0, 0.0});
  const auto b = ExtPoint::finite({1.0, 0.0, 0.0});
  CHECK_THROWS_AS(chordal_distance(a, b), std::invalid_argument);
}

TEST_CASE("chordal diameter") {
  const auto zero = ExtPoint::finite({0.0, 0.0});
  const auto e1 = ExtPoint::finite({1.0, 0.0});
  const auto inf = ExtPoint::infinity(2);

  const ExtPoint singleton[] = {e1};
  CHECK(chordal_diameter(singleton) == 0.0);

  const ExtPoint pair[] = {zero, inf};
  CHECK(chordal_diameter(pair) == doctest::Approx(1.0));

  // max(1, 1/sqrt(2), 1/sqrt(2)) = 1
  const ExtPoint triple[] = {zero, e1, inf};
  CHECK(chordal_diameter(triple) == doctest::Approx(1.0));

  CHECK_THROWS_AS(chordal_diameter(std::span<const ExtPoint>{}),
                  std::invalid_argument);
}

TEST_CASE("antipodal involution") {
  const auto e1 = ExtPoint::finite({1.0, 0.0});
  const auto a = antipodal(e1);
  CHECK(a.coords()[0] == doctest::Approx(-1.0));
  CHECK(a.coords()[1] == doctest::Approx(0.0));

  const auto b = antipodal(ExtPoint::finite({0.0, 2.0}));
  CHECK(b.coords()[0] == doctest::Approx(0.0));
  CHECK(b.coords()[1] == doctest::Approx(-0.5));

  CHECK(antipodal(ExtPoint::finite({0.0, 0.0})).is_infinity());
  CHECK(antipodal(ExtPoint::infinity(3)).norm() == 0.0);

  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 3;
    auto x = random_finite(rng, n);
    if (x.norm() < 1e-9) continue;
    const auto back = antipodal(antipodal(x));
    for (int i = 0; i < n; ++i)
      CHECK(back.coords()[i] == doctest::Approx(x.coords()[i]).epsilon(1e-12));
  }
}

TEST_CASE("antipodal points on the unit sphere are chordally opposite") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(3);
    double norm2 = 0.0;
    for (double& x : v) {
      x = rng.normal();
      norm2 += x * x;
    }
    for (double& x : v) x /= std::sqrt(norm2);
    const auto x = ExtPoint::finite(v);
    CHECK(chordal_distance(x, antipodal(x)) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}
