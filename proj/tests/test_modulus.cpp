#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "ringq/errors.hpp"
#include "ringq/geom.hpp"
#include "ringq/modulus.hpp"
#include "ringq/quadrature.hpp"

using namespace ringq;

namespace {

constexpr double kPi = std::numbers::pi;

Condenser ring_condenser(int n, double r1, double r2, int res) {
  Condenser c;
  c.A = RegionBall{std::vector<double>(n, 0.0), r2};
  c.C = make_ball_set(std::vector<double>(n, 0.0), r1);
  c.n = n;
  c.resolution = res;
  return c;
}

}  // namespace

TEST_CASE("exact ring modulus") {
  CHECK(ring_modulus_exact(0.5, 0.5 * std::numbers::e, 2) ==
        doctest::Approx(2.0 * kPi).epsilon(1e-13));
  CHECK(ring_modulus_exact(1.0, std::numbers::e, 3) ==
        doctest::Approx(4.0 * kPi).epsilon(1e-13));
  CHECK(ring_modulus_exact(1.0, 1.0 + 1e-9, 2) > 1e9);
  CHECK_THROWS_AS(ring_modulus_exact(1.0, 0.5, 2), std::invalid_argument);
  CHECK_THROWS_AS(ring_modulus_exact(0.0, 1.0, 2), std::invalid_argument);
}

TEST_CASE("numeric ring capacity against the closed form") {
  const auto result = capacity_numeric(ring_condenser(2, 0.5, 1.0, 96), 1e-5);
  const double exact = ring_modulus_exact(0.5, 1.0, 2);
  CHECK(std::abs(result.value - exact) / exact < 0.03);
  CHECK(result.residual <= 1e-5);
  CHECK(result.iterations > 0);
}

TEST_CASE("solver energy is monotone across iterations") {
  SolveOptions options;
  options.record_energy = true;
  const auto result =
      capacity_numeric(ring_condenser(2, 0.4, 1.0, 64), 1e-5, options);
  REQUIRE(result.energy_history.size() > 2);
  for (std::size_t i = 1; i < result.energy_history.size(); ++i)
    CHECK(result.energy_history[i] <= result.energy_history[i - 1] + 1e-12);
}

TEST_CASE("condenser validation") {
  CHECK_THROWS_AS(capacity_numeric(ring_condenser(2, 0.99, 1.0, 64), 1e-5),
                  std::invalid_argument);  // C touches the boundary

  Condenser empty = ring_condenser(2, 0.5, 1.0, 64);
  empty.C.parts.clear();
  CHECK_THROWS_AS(capacity_numeric(empty, 1e-5), std::invalid_argument);

  Condenser tiny = ring_condenser(2, 0.5, 1.0, 64);
  tiny.C = make_ball_set({0.41, 0.37}, 1e-6);  // below grid resolution
  CHECK_THROWS_AS(capacity_numeric(tiny, 1e-5), std::invalid_argument);

  CHECK_THROWS_AS(capacity_numeric(ring_condenser(2, 0.5, 1.0, 64), -1.0),
                  std::invalid_argument);
}

TEST_CASE("convergence error carries the last iterate data") {
  SolveOptions options;
  options.max_iterations = 1;
  options.multilevel = false;
  try {
    capacity_numeric(ring_condenser(2, 0.5, 1.0, 64), 1e-9, options);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& err) {
    CHECK(err.last_energy > 0.0);
    CHECK(err.last_residual > 1e-9);
    CHECK(err.iterations <= 1);
  }
}

TEST_CASE("single grid-cell plate shrinks under refinement") {
  // Point plates have vanishing capacity; the sweep values differ by tens
  // of percent, so a modest solver tolerance suffices.
  std::vector<double> values;
  for (int res : {32, 64, 96}) {
    Condenser c;
    c.A = RegionBall{{0.0, 0.0, 0.0}, 1.0};
    c.C = make_point_set({{0.028, -0.041, 0.013}});
    c.n = 3;
    c.resolution = res;
    values.push_back(capacity_numeric(c, 1e-4).value);
  }
  CHECK(values[1] < values[0]);
  CHECK(values[2] < values[1]);
}

TEST_CASE("domain monotonicity on nested boxes") {
  auto solve_box = [&](double half) {
    Condenser c;
    c.A = RegionBox{{-half, -half}, {half, half}};
    c.C = make_ball_set({0.0, 0.0}, 0.3);
    c.n = 2;
    c.resolution = 128;
    return capacity_numeric(c, 1e-5).value;
  };
  const double small = solve_box(1.0);
  const double large = solve_box(1.5);
  CHECK(large <= small * (1.0 + 5e-3));
}

TEST_CASE("plate monotonicity under inclusion") {
  auto solve_plate = [&](double radius) {
    Condenser c = ring_condenser(2, radius, 1.0, 128);
    return capacity_numeric(c, 1e-5).value;
  };
  const double small = solve_plate(0.3);
  const double large = solve_plate(0.45);
  CHECK(large >= small * (1.0 - 5e-3));
}

TEST_CASE("connecting modulus of concentric plates") {
  const auto E = make_ball_set({0.0, 0.0}, 0.5);
  const auto F = make_shell_set({0.0, 0.0}, 1.0);
  const Region domain = RegionBox{{-1.2, -1.2}, {1.2, 1.2}};
  const double exact = ring_modulus_exact(0.5, 1.0, 2);
  const double forward = modulus_connecting(E, F, domain, 1e-5, 193);
  CHECK(std::abs(forward - exact) / exact < 0.03);

  const double swapped = modulus_connecting(F, E, domain, 1e-5, 193);
  CHECK(std::abs(swapped - forward) / forward < 1e-3);
}

TEST_CASE("touching plates report an infinite modulus") {
  const auto E = make_ball_set({-0.2, 0.0}, 0.2);
  const auto F = make_ball_set({0.201, 0.0}, 0.2);
  const Region domain = RegionBox{{-1.0, -1.0}, {1.0, 1.0}};
  CHECK(std::isinf(modulus_connecting(E, F, domain, 1e-5, 64)));
}

TEST_CASE("overlapping plates are rejected") {
  const auto E = make_ball_set({0.0, 0.0}, 0.3);
  const auto F = make_ball_set({0.1, 0.0}, 0.3);
  const Region domain = RegionBox{{-1.0, -1.0}, {1.0, 1.0}};
  CHECK_THROWS_AS(modulus_connecting(E, F, domain, 1e-5, 64),
                  std::invalid_argument);
}

TEST_CASE("empty curve families have zero modulus") {
  const auto E = make_ball_set({0.0, 0.0}, 0.2);
  CompactSet nothing;
  nothing.n = 2;
  const Region domain = RegionBox{{-1.0, -1.0}, {1.0, 1.0}};
  CHECK(modulus_connecting(E, nothing, domain, 1e-5, 64) == 0.0);
}

TEST_CASE("capacity bound helpers") {
  // F = omega I gives the ring-modulus form omega / I^{n-1}.
  const double I = 2.7;
  CHECK(capacity_upper_bound(omega(3) * I, I, 3) ==
        doctest::Approx(omega(3) / (I * I)).epsilon(1e-13));
  // F = K I^p with p < n decays as I grows.
  const double b1 = capacity_upper_bound(5.0 * std::pow(10.0, 1.0), 10.0, 2);
  const double b2 = capacity_upper_bound(5.0 * std::pow(100.0, 1.0), 100.0, 2);
  CHECK(b2 < b1);
  // F = K I^n is constant in I.
  CHECK(capacity_upper_bound(7.0 * std::pow(3.0, 2.0), 3.0, 2) ==
        doctest::Approx(7.0));
  CHECK_THROWS_AS(capacity_upper_bound(1.0, 0.0, 2), std::invalid_argument);
}

TEST_CASE("chordal-diameter capacity lower bound") {
  CHECK(capacity_lower_bound(1.0, 1.0, 2, 4.0) ==
        doctest::Approx(2.0 * kPi / std::log(32.0)).epsilon(1e-12));
  // Decay toward 0 as the image diameter shrinks is logarithmic.
  CHECK(capacity_lower_bound(1e-3, 1.0, 2, 4.0) <
        capacity_lower_bound(1e-1, 1.0, 2, 4.0));
  CHECK(capacity_lower_bound(1e-300, 1.0, 2, 4.0) < 1e-2);
  CHECK_THROWS_AS(capacity_lower_bound(0.0, 1.0, 2, 4.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(capacity_lower_bound(1.0, 1.0, 2, 3.0),
                  std::invalid_argument);

  // Exact ring capacities dominate the bound computed from the measured
  // chordal diameters of plate and complement.
  for (double r1 : {0.1, 0.25, 0.4}) {
    for (double r2 : {0.6, 0.8, 1.0}) {
      const double cap = ring_modulus_exact(r1, r2, 2);
      const double h_plate = 2.0 * r1 / (1.0 + r1 * r1);
      // For r2 <= 1 the complement contains a unit-norm antipodal pair.
      const double h_comp = 1.0;
      const double bound = capacity_lower_bound(h_plate, h_comp, 2, 4.0);
      CHECK(cap >= bound);
    }
  }
}

TEST_CASE("grid field export") {
  const auto result = capacity_numeric(ring_condenser(2, 0.4, 1.0, 33), 1e-4);
  std::ostringstream csv;
  write_field_csv(result, csv);
  const std::string text = csv.str();
  CHECK(text.rfind("n,resolution,lo,hi\n2,33,", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2 + 33);

  std::ostringstream bin;
  write_field_binary(result, bin);
  CHECK(bin.str().size() == result.field.size() * sizeof(double));
}
