#include "ringq/report.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ringq/bounds.hpp"
#include "ringq/geom.hpp"
#include "ringq/maps.hpp"
#include "ringq/modulus.hpp"
#include "ringq/profiles.hpp"
#include "ringq/qprofile.hpp"
#include "ringq/quadrature.hpp"
#include "ringq/rng.hpp"
#include "ringq/setfn.hpp"

namespace ringq {

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok) { pass = pass && ok; }
  template <typename T>
  Check& operator<<(const T& value) {
    detail << value;
    return *this;
  }
};

double rel_err(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

// --- 1: capacity solver against the exact ring modulus -------------------

CriterionOutcome criterion_capacity(const ReportOptions& options) {
  Check check;
  struct Case {
    int n;
    int res;
    double tol_rel;
    double budget_seconds;
  };
  const std::vector<Case> cases =
      options.quick ? std::vector<Case>{{2, 96, 0.03, 60.0}, {3, 32, 0.05, 300.0}}
                    : std::vector<Case>{{2, 256, 0.03, 60.0},
                                        {3, 96, 0.05, 300.0}};
  double total = 0.0;
  for (const auto& c : cases) {
    Condenser condenser;
    condenser.A = RegionBall{std::vector<double>(c.n, 0.0), 1.0};
    condenser.C = make_ball_set(std::vector<double>(c.n, 0.0), 0.5);
    condenser.n = c.n;
    condenser.resolution = c.res;
    const auto t0 = Clock::now();
    const auto result = capacity_numeric(condenser, 1e-5);
    const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    total += seconds;
    const double exact = ring_modulus_exact(0.5, 1.0, c.n);
    const double err = rel_err(result.value, exact);
    check.require(err <= c.tol_rel);
    check.require(seconds <= c.budget_seconds);
    check << "n=" << c.n << " grid=" << c.res
          << " relerr=" << format_double(err) << " (gate "
          << format_double(c.tol_rel) << "); ";
  }
  return {1, "capacity solver vs exact ring modulus", check.pass,
          check.detail.str(), total};
}

// --- 2: the weighted annulus integral identity ----------------------------

CriterionOutcome criterion_weighted_identity(const ReportOptions& options) {
  const auto t0 = Clock::now();
  Check check;
  const int pairs = options.quick ? 5 : 20;
  Rng rng(options.seed ^ 0x37ull);
  double worst = 0.0;
  for (int n : {2, 3}) {
    std::vector<QProfile> profiles;
    profiles.push_back(make_radial_profile(n, [](double) { return 1.0; }, 0.35));
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
      for (int trial = 0; trial < pairs; ++trial) {
        const double eps0 = rng.uniform(0.05, 0.3);
        const double eps = eps0 * std::pow(10.0, -rng.uniform(0.5, 2.0));
        const auto psi = psi_from_q(profile, eps, eps0);
        const double I = I_integral(psi, eps, eps0).value;
        const auto field = profile.evaluate;
        const double weighted = annulus_integral(
            [&](std::span<const double> xx) {
              double r2 = 0.0;
              for (double v : xx) r2 += v * v;
              return field(xx) * std::pow(psi(std::sqrt(r2)), n);
            },
            profile.center, eps, eps0, profile.rule);
        worst = std::max(worst, rel_err(weighted, omega(n) * I));
      }
    }
  }
  check.require(worst <= 1e-6);
  check << "profiles {1, log, log^2}, n in {2,3}, " << pairs
        << " pairs each; worst relerr=" << format_double(worst)
        << " (gate 1e-06)";
  return {2, "weighted annulus integral equals omega times I", check.pass,
          check.detail.str(),
          std::chrono::duration<double>(Clock::now() - t0).count()};
}

// --- 3: canonical density closed form -------------------------------------

CriterionOutcome criterion_canonical_integral(const ReportOptions&) {
  const auto t0 = Clock::now();
  Check check;
  const auto psi = make_psi_canonical();
  double worst = 0.0;
  for (double eps0 : {std::exp(-1.0), std::exp(-2.0)}) {
    for (int k = 3; k <= 8; ++k) {
      const double eps = std::exp(-static_cast<double>(k));
      if (eps >= eps0) continue;
      const double numeric = I_integral(psi, eps, eps0).value;
      const double closed =
          std::log(std::log(1.0 / eps) / std::log(1.0 / eps0));
      worst = std::max(worst, rel_err(numeric, closed));
    }
  }
  check.require(worst <= 1e-8);
  check << "eps in {e^-3..e^-8}, eps0 in {e^-1, e^-2}; worst relerr="
        << format_double(worst) << " (gate 1e-08)";
  return {3, "canonical admissibility integral closed form", check.pass,
          check.detail.str(),
          std::chrono::duration<double>(Clock::now() - t0).count()};
}

// --- 4: ring inequality ensemble -------------------------------------------

CriterionOutcome criterion_ring_inequality(const ReportOptions& options) {
  const auto t0 = Clock::now();
  Check check;
  const int samples = options.quick ? 20 : 100;

  const auto unit = make_radial_profile(2, [](double) { return 1.0; });
  const auto identity_report = verify_ring_q_inequality(
      RadialMap::identity(2), unit, 0.2, 0.7, samples, options.seed);
  check.require(identity_report.violations == 0);
  check.require(std::abs(identity_report.extremal_slack) <=
                1e-6 * identity_report.lhs);
  check << "identity: extremal slack "
        << format_double(identity_report.extremal_slack / identity_report.lhs)
        << " rel, violations " << identity_report.violations << "; ";

  const auto Q = profile_by_name("log2", 2);
  int family_violations = 0;
  for (int m : {2, 8, 32}) {
    const auto map = build_truncated_map(Q, m, 2);
    auto q_m = make_radial_profile(2, [m](double r) {
      if (r <= 1.0 / m) return 1.0;
      const double l = std::log(1.0 / r);
      return std::max(1.0, l * l);
    });
    const auto report = verify_ring_q_inequality(map, q_m, 0.05, 0.6, samples,
                                                 options.seed + m);
    family_violations += report.violations;
  }
  check.require(family_violations == 0);
  check << "truncated family m in {2,8,32}: violations " << family_violations
        << "; ";

  const auto negative = verify_ring_q_inequality(
      RadialMap::identity(2), profile_by_name("const:0.5", 2), 0.2, 0.7,
      samples, options.seed + 99);
  check.require(negative.violations >= 1);
  check << "undersized profile: violations " << negative.violations
        << " (>=1 expected)";
  return {4, "ring inequality ensemble", check.pass, check.detail.str(),
          std::chrono::duration<double>(Clock::now() - t0).count()};
}

// --- 5: non-equicontinuous family -----------------------------------------

CriterionOutcome criterion_family(const ReportOptions& options) {
  const auto t0 = Clock::now();
  Check check;
  const int m_max = options.quick ? 16 : 64;

  // Convergent exponent integral of max(1, log^2(1/t)) from the cache floor.
  const auto Q = profile_by_name("log2", 2);
  const double C_total = radial_integral(
      [&](double t) {
        return 1.0 / (t * std::max(1.0, std::pow(std::log(1.0 / t), 2.0)));
      },
      1e-8, 1.0 - 1e-12, 64);
  const double sigma = std::exp(-C_total);

  const auto family = build_truncated_family(Q, m_max, 2);
  double worst_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < family.members.size(); ++i) {
    const double value =
        family.members[i].rho(1.0 / family.m_values[i]);
    worst_ratio = std::min(worst_ratio, value / sigma);
  }
  check.require(worst_ratio >= 1.0 - 1e-9);
  check << "C=" << format_double(C_total) << " sigma=" << format_double(sigma)
        << " min |f_m(1/m)|/sigma=" << format_double(worst_ratio)
        << " over m<=" << m_max << "; ";

  // Positive control: clamped log profile has a divergent exponent
  // integral, so the family contracts at the origin.
  const auto family_log =
      build_truncated_family(family_profile_by_name("log", 2), m_max, 2);
  std::vector<double> radii;
  for (int k = 3; k <= 12; ++k) radii.push_back(std::pow(0.5, k));
  const auto experiment = equicontinuity_experiment(family_log, radii);
  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < experiment.sup_h.size(); ++i)
    decreasing = decreasing &&
                 experiment.sup_h[i + 1] < experiment.sup_h[i] + 1e-15;
  check.require(decreasing);
  check << "log-profile control: sup_m h decreasing over r=2^-k, k=3..12 -> "
        << (decreasing ? "yes" : "no");
  return {5, "non-equicontinuous truncated family", check.pass,
          check.detail.str(),
          std::chrono::duration<double>(Clock::now() - t0).count()};
}

// --- 6: bound-formula identities -------------------------------------------

CriterionOutcome criterion_bound_identities(const ReportOptions&) {
  const auto t0 = Clock::now();
  Check check;

  bool identities = true;
  for (int n : {2, 3, 4}) {
    const auto pack = make_constants(n, 3.7, 1.5);
    identities = identities &&
                 std::abs(pack.alpha_n - 2.0 * pack.lambda_n * pack.lambda_n) <
                     1e-12;
    identities =
        identities &&
        std::abs(pack.beta_n_tilde / pack.beta_n -
                 std::pow(2.0, -1.0 / (n - 1))) < 1e-12;
    identities =
        identities && std::abs(make_constants(n, 1.0, 1.0).gamma_np - 1.0) <
                          1e-12 &&
        std::abs(make_constants(n, 1.0, n).gamma_np) < 1e-12;
  }
  check.require(identities);
  check << "pack identities " << (identities ? "exact" : "BROKEN") << "; ";

  const auto unit = make_radial_profile(2, [](double) { return 1.0; });
  double worst_linear = 0.0;
  for (double dist : {0.25, 0.05, 0.005, 1e-4})
    worst_linear = std::max(
        worst_linear, rel_err(mean_integral_envelope(unit, 0.25, dist, 32.0),
                              32.0 * dist / 0.25));
  check.require(worst_linear <= 1e-9);
  check << "unit-profile envelope linearity worst relerr="
        << format_double(worst_linear) << " (gate 1e-09); ";

  double worst_slope = 0.0;
  for (int n : {2, 3}) {
    const double C = 2.0;
    const auto profile = profile_by_name("powlog:2", n);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (int k = 4; k <= 12; ++k) {
      const double dist = std::pow(2.0, -k);
      const double bound = mean_integral_envelope(profile, 0.2, dist, 32.0);
      const double xv = std::log(std::log(1.0 / dist));
      const double yv = std::log(bound);
      sx += xv;
      sy += yv;
      sxx += xv * xv;
      sxy += xv * yv;
      ++count;
    }
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    const double expected = -std::pow(1.0 / C, 1.0 / (n - 1));
    worst_slope = std::max(worst_slope, std::abs(slope / expected - 1.0));
  }
  check.require(worst_slope <= 0.02);
  check << "decay-exponent regression slope error="
        << format_double(worst_slope) << " (gate 0.02)";
  return {6, "bound-formula identities", check.pass, check.detail.str(),
          std::chrono::duration<double>(Clock::now() - t0).count()};
}

// --- 7: inner dilatation equals the truncated mean --------------------------

CriterionOutcome criterion_inner_dilatation(const ReportOptions& options) {
  const auto t0 = Clock::now();
  Check check;
  const int count = options.quick ? 25 : 100;
  const auto Q = profile_by_name("log2", 2);
  double worst = 0.0;
  for (int m : {2, 8, 32}) {
    const auto map = build_truncated_map(Q, m, 2);
    for (int i = 0; i < count; ++i) {
      const double r =
          1.0 / m + (i + 0.5) / count * (1.0 - 1.0 / m) * 0.999;
      const double expected =
          std::max(1.0, std::pow(std::log(1.0 / r), 2.0));
      worst = std::max(worst,
                       rel_err(inner_dilatation_radial(map, r), expected));
    }
  }
  check.require(worst <= 1e-6);
  check << "m in {2,8,32}, " << count
        << " radii each; worst relerr=" << format_double(worst)
        << " (gate 1e-06)";
  return {7, "inner dilatation matches the truncated mean", check.pass,
          check.detail.str(),
          std::chrono::duration<double>(Clock::now() - t0).count()};
}

// --- 8: set function ---------------------------------------------------------

CriterionOutcome criterion_set_function(const ReportOptions& options) {
  const auto t0 = Clock::now();
  Check check;
  const double cap = omega(2) / std::log(std::sqrt(3.0));
  const double allowance = 1.05;

  SetFnOptions suite_options;
  suite_options.resolution = options.quick ? 48 : 96;
  suite_options.refine_rounds = 0;
  const auto grid = default_x_grid(2);

  std::vector<CompactSet> suite{
      make_point_set({{0.0, 0.0}}),
      make_point_set({{0.3, -0.2}, {-0.4, 0.1}}),
      make_segment_set({-0.4, 0.0}, {0.4, 0.0}),
      make_ball_set({0.2, -0.1}, 0.35),
      make_ball_set({0.0, 0.0}, 1.0),
  };
  if (options.quick) suite.resize(2);
  double worst_cap = 0.0;
  for (const auto& E : suite) {
    const auto result = c_set(E, grid, 1e-5, suite_options);
    worst_cap = std::max(worst_cap, result.c_value / cap);
  }
  check.require(worst_cap <= allowance);
  check << "suite max c/cap=" << format_double(worst_cap) << " (gate "
        << format_double(allowance) << "); ";

  SetFnOptions pair_options;
  pair_options.resolution = options.quick ? 48 : 64;
  pair_options.refine_rounds = 0;
  std::vector<std::pair<CompactSet, CompactSet>> nested;
  for (double r : {0.1, 0.2, 0.3, 0.4})
    nested.emplace_back(make_ball_set({0.0, 0.0}, r),
                        make_ball_set({0.0, 0.0}, r + 0.08));
  for (double len : {0.2, 0.4, 0.6})
    nested.emplace_back(make_segment_set({-len, 0.0}, {len, 0.0}),
                        make_segment_set({-len - 0.15, 0.0}, {len + 0.15, 0.0}));
  nested.emplace_back(make_point_set({{0.1, 0.1}}),
                      make_point_set({{0.1, 0.1}, {-0.3, 0.2}}));
  nested.emplace_back(make_point_set({{0.0, 0.0}}),
                      make_ball_set({0.0, 0.0}, 0.2));
  nested.emplace_back(make_segment_set({-0.2, 0.0}, {0.2, 0.0}),
                      make_ball_set({0.0, 0.0}, 0.25));
  if (options.quick) nested.resize(2);
  int violations = 0;
  for (const auto& [small, large] : nested) {
    const double c_small = c_set(small, grid, 1e-5, pair_options).c_value;
    const double c_large = c_set(large, grid, 1e-5, pair_options).c_value;
    if (c_small > c_large * (1.0 + 1e-6) + 1e-9) ++violations;
  }
  check.require(violations == 0);
  check << nested.size() << " nested pairs, monotonicity violations "
        << violations << "; ";

  // Point refinement with a fixed reduced search set.
  std::vector<ExtPoint> small_grid{
      ExtPoint::finite({0.0, 0.0}),    ExtPoint::infinity(2),
      ExtPoint::finite({0.5, 0.0}),    ExtPoint::finite({1.0, 0.0}),
      ExtPoint::finite({0.0, -2.0}),   ExtPoint::finite({-0.7, 0.7}),
  };
  const auto point = make_point_set({{0.0, 0.0}});
  std::vector<int> resolutions =
      options.quick ? std::vector<int>{32, 48, 64}
                    : std::vector<int>{64, 128, 256};
  std::vector<double> values;
  for (int res : resolutions) {
    SetFnOptions opt;
    opt.resolution = res;
    opt.refine_rounds = 0;
    values.push_back(c_set(point, small_grid, 1e-5, opt).c_value);
  }
  const bool strictly_down =
      values[0] > values[1] && values[1] > values[2] && values[2] > 0.0;
  check.require(strictly_down);
  check << "point c over grids: " << format_double(values[0]) << " > "
        << format_double(values[1]) << " > " << format_double(values[2]);
  return {8, "set-function probes", check.pass, check.detail.str(),
          std::chrono::duration<double>(Clock::now() - t0).count()};
}

// --- 9: determinism -----------------------------------------------------------

std::string seeded_fingerprint(std::uint64_t seed) {
  std::ostringstream out;
  const auto Q = profile_by_name("log2", 2);
  const auto family = build_truncated_family(Q, 8, 2);
  std::vector<double> radii{0.25, 0.1, 0.05};
  const auto experiment = equicontinuity_experiment(family, radii);
  for (const auto& row : experiment.rows)
    out << row.m << ',' << format_double(row.r) << ','
        << format_double(row.h) << '\n';

  const auto unit = make_radial_profile(2, [](double) { return 1.0; });
  const auto report = verify_ring_q_inequality(RadialMap::identity(2), unit,
                                               0.2, 0.7, 25, seed);
  out << format_double(report.worst_slack) << ','
      << format_double(report.extremal_slack) << '\n';

  SetFnOptions opt;
  opt.resolution = 48;
  opt.refine_rounds = 1;
  const auto result = c_set(make_segment_set({-0.3, 0.0}, {0.3, 0.0}),
                            default_x_grid(2), 1e-5, opt);
  out << format_double(result.c_value) << '\n';
  for (double v : result.values) out << format_double(v) << '\n';

  Rng rng(seed);
  for (int i = 0; i < 8; ++i) out << format_double(rng.uniform()) << '\n';
  return out.str();
}

CriterionOutcome criterion_determinism(const ReportOptions& options) {
  const auto t0 = Clock::now();
  const std::string first = seeded_fingerprint(options.seed);
  const std::string second = seeded_fingerprint(options.seed);
  const bool pass = first == second && !first.empty();
  std::ostringstream detail;
  detail << "seeded double run: " << (pass ? "byte-identical" : "MISMATCH")
         << " (" << first.size() << " bytes)";
  return {9, "seeded runs are byte-identical", pass, detail.str(),
          std::chrono::duration<double>(Clock::now() - t0).count()};
}

}  // namespace

std::vector<CriterionOutcome> run_acceptance_criteria(
    const ReportOptions& options) {
  std::vector<CriterionOutcome> outcomes;
  outcomes.push_back(criterion_capacity(options));
  outcomes.push_back(criterion_weighted_identity(options));
  outcomes.push_back(criterion_canonical_integral(options));
  outcomes.push_back(criterion_ring_inequality(options));
  outcomes.push_back(criterion_family(options));
  outcomes.push_back(criterion_bound_identities(options));
  outcomes.push_back(criterion_inner_dilatation(options));
  outcomes.push_back(criterion_set_function(options));
  outcomes.push_back(criterion_determinism(options));
  return outcomes;
}

Table criteria_table(const std::vector<CriterionOutcome>& outcomes) {
  Table table({"criterion", "name", "pass", "detail"});
  for (const auto& outcome : outcomes)
    table.add_row({static_cast<long long>(outcome.id), outcome.name,
                   std::string(outcome.pass ? "pass" : "FAIL"),
                   outcome.detail});
  return table;
}

}  // namespace ringq
