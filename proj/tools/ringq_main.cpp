// Command-line front end: runs the toolkit's experiments end-to-end and
// emits machine-readable tables (CSV by default, JSON mirror via --format).
// Exit codes: 0 success, 1 validation error, 2 convergence failure.

#include <CLI11.hpp>
#include <limits>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ringq/bounds.hpp"
#include "ringq/errors.hpp"
#include "ringq/geom.hpp"
#include "ringq/maps.hpp"
#include "ringq/modulus.hpp"
#include "ringq/profiles.hpp"
#include "ringq/qprofile.hpp"
#include "ringq/quadrature.hpp"
#include "ringq/report.hpp"
#include "ringq/setfn.hpp"
#include "ringq/table.hpp"

namespace {

using namespace ringq;

struct OutputSink {
  std::string path;  // empty -> stdout
  bool json = false;

  void write(const Table& table) const {
    if (path.empty()) {
      json ? table.write_json(std::cout) : table.write_csv(std::cout);
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    json ? table.write_json(out) : table.write_csv(out);
  }
};

void add_output_flags(CLI::App* cmd, OutputSink& sink) {
  cmd->add_option("--out", sink.path, "output file (default: stdout)");
  cmd->add_flag_callback(
      "--json", [&sink]() { sink.json = true; },
      "emit JSON (one object per row) instead of CSV");
}

int run_capacity(int n, double r1, double r2, int grid, double tol,
                 const std::string& dump_field, const OutputSink& sink) {
  Condenser condenser;
  condenser.A = RegionBall{std::vector<double>(n, 0.0), r2};
  condenser.C = make_ball_set(std::vector<double>(n, 0.0), r1);
  condenser.n = n;
  condenser.resolution = grid;
  const auto result = capacity_numeric(condenser, tol);
  const double exact = ring_modulus_exact(r1, r2, n);
  Table table({"n", "r1", "r2", "grid", "numeric", "exact", "rel_error",
               "iterations", "residual"});
  table.add_row({static_cast<long long>(n), r1, r2,
                 static_cast<long long>(grid), result.value, exact,
                 (result.value - exact) / exact,
                 static_cast<long long>(result.iterations), result.residual});
  sink.write(table);
  if (!dump_field.empty()) {
    std::ofstream out(dump_field, std::ios::binary);
    if (!out)
      throw std::invalid_argument("cannot open field file: " + dump_field);
    if (dump_field.size() > 4 &&
        dump_field.substr(dump_field.size() - 4) == ".bin")
      write_field_binary(result, out);
    else
      write_field_csv(result, out);
  }
  return 0;
}

int run_modulus(int n, double r1, double r2, double domain_r, int grid,
                double tol, const OutputSink& sink) {
  const auto E = make_ball_set(std::vector<double>(n, 0.0), r1);
  const auto F = make_shell_set(std::vector<double>(n, 0.0), r2);
  const Region domain = RegionBox{std::vector<double>(n, -domain_r),
                                  std::vector<double>(n, domain_r)};
  const double value = modulus_connecting(E, F, domain, tol, grid);
  const double exact = ring_modulus_exact(r1, r2, n);
  Table table({"n", "r1", "r2", "grid", "numeric", "exact", "rel_error"});
  table.add_row({static_cast<long long>(n), r1, r2,
                 static_cast<long long>(grid), value, exact,
                 (value - exact) / exact});
  sink.write(table);
  return 0;
}

int run_qmean(const std::string& profile_name, int n, int count, double r_min,
              double r_max, const OutputSink& sink) {
  const auto profile = profile_by_name(profile_name, n);
  Table table({"r", "q_mean"});
  for (int i = 0; i < count; ++i) {
    const double r =
        r_min * std::pow(r_max / r_min, i / std::max(1.0, count - 1.0));
    table.add_row({r, q_mean(profile, r)});
  }
  sink.write(table);
  return 0;
}

int run_fmo(const std::string& profile_name, int n, int k_min, int k_max,
            const OutputSink& sink) {
  const auto profile = profile_by_name(profile_name, n);
  Table table({"k", "eps", "oscillation"});
  for (int k = k_min; k <= k_max; ++k) {
    const double eps = std::pow(0.5, k);
    table.add_row({static_cast<long long>(k), eps,
                   fmo_oscillation(profile.evaluate, profile.center, eps,
                                   profile.rule)});
  }
  sink.write(table);
  return 0;
}

int run_dini(const std::string& profile_name, int n, double eps0,
             const OutputSink& sink) {
  const auto profile = profile_by_name(profile_name, n);
  const auto result = dini_integral(profile, eps0);
  Table table({"profile", "eps0", "verdict", "value", "tail_exponent",
               "last_increment"});
  table.add_row({profile_name, eps0,
                 std::string(result.diverges ? "diverges" : "converges"),
                 result.value, result.tail_exponent, result.last_increment});
  sink.write(table);
  std::cerr << (result.diverges ? "diverges" : "converges") << "\n";
  return 0;
}

int run_bounds_family(const std::string& profile_name, int n, int m_max,
                      double eps0, double alpha, const OutputSink& sink) {
  const auto profile = family_profile_by_name(profile_name, n);
  const auto family = build_truncated_family(profile, m_max, n);
  BoundSpec spec;
  spec.label = "mean-integral envelope";
  spec.eval = [&](double dist) {
    return mean_integral_envelope(profile, eps0, std::min(dist, eps0), alpha);
  };
  std::vector<double> radii;
  for (int k = 2; k <= 10; ++k) radii.push_back(std::pow(0.5, k));
  const auto report = check_bound_on_family(family, spec, radii);
  Table table({"member", "radius", "measured", "bound", "slack"});
  for (const auto& row : report.rows)
    table.add_row({static_cast<long long>(row.m), row.radius, row.measured,
                   row.bound, row.slack});
  sink.write(table);
  return 0;
}

int run_bounds(int n, double K, double p, double lambda, const OutputSink& sink) {
  const auto pack =
      make_constants(n, K, p, lambda > 0 ? std::optional<double>(lambda)
                                         : std::nullopt);
  Table table({"quantity", "value"});
  table.add_row({std::string("n"), static_cast<long long>(pack.n)});
  table.add_row({std::string("lambda_n"), pack.lambda_n});
  table.add_row({std::string("alpha_n"), pack.alpha_n});
  table.add_row({std::string("beta_n"), pack.beta_n});
  table.add_row({std::string("beta_n_tilde"), pack.beta_n_tilde});
  table.add_row({std::string("gamma_np"), pack.gamma_np});
  table.add_row({std::string("omega_prev"), pack.omega_prev});
  for (double I : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    table.add_row({"envelope_bound(delta=1,I=" + format_double(I) + ")",
                   envelope_bound(pack, 1.0, I)});
    table.add_row({"weak_envelope_bound(I=" + format_double(I) + ")",
                   weak_envelope_bound(pack, I)});
  }
  sink.write(table);
  return 0;
}

int run_family(const std::string& profile_name, int n, int m_max, int k_min,
               int k_max, const OutputSink& sink) {
  const auto profile = family_profile_by_name(profile_name, n);
  const auto family = build_truncated_family(profile, m_max, n);
  std::vector<double> radii;
  for (int k = k_min; k <= k_max; ++k) radii.push_back(std::pow(0.5, k));
  const auto report = equicontinuity_experiment(family, radii);
  Table table({"m", "r", "h_value"});
  for (const auto& row : report.rows)
    table.add_row({static_cast<long long>(row.m), row.r, row.h});
  // Per-member witness values |f_m(1/m)| appended with r = 1/m.
  for (std::size_t i = 0; i < report.rho_at_inv_m.size(); ++i) {
    const double rho = report.rho_at_inv_m[i];
    const double h = rho / std::sqrt(1.0 + rho * rho);
    table.add_row({static_cast<long long>(family.m_values[i]),
                   1.0 / family.m_values[i], h});
  }
  sink.write(table);
  return 0;
}

int run_setfn(const std::string& set_text, const std::string& set_file, int n,
              int grid, double tol, const OutputSink& sink) {
  CompactSet set;
  if (!set_file.empty()) {
    std::ifstream in(set_file);
    if (!in) throw std::invalid_argument("cannot open set file: " + set_file);
    set = parse_compact_set(in, n);
  } else {
    set = parse_compact_set(set_text, n);
  }
  if (set.empty()) throw std::invalid_argument("empty set description");
  SetFnOptions options;
  options.resolution = grid;
  const auto x_grid = default_x_grid(n);
  const std::string set_id = set_file.empty() ? "inline" : set_file;
  Table table({"set", "x", "m", "m_antipodal", "c"});
  double best = std::numeric_limits<double>::infinity();
  std::string best_x;
  for (const auto& x : x_grid) {
    const double m1 = m_standard(set, x, tol, options);
    const double m2 = m_standard(set, antipodal(x), tol, options);
    std::string label = "inf";
    if (!x.is_infinity()) {
      std::ostringstream ss;
      const auto& c = x.coords();
      for (std::size_t i = 0; i < c.size(); ++i)
        ss << (i ? " " : "") << format_double(c[i]);
      label = ss.str();
    }
    const double value = std::max(m1, m2);
    if (value < best) {
      best = value;
      best_x = label;
    }
    table.add_row({set_id, label, m1, m2, value});
  }
  table.add_row({set_id, "argmin " + best_x, best, best, best});
  sink.write(table);
  return 0;
}

int run_verify_eq2(const std::string& profile_name, int n, double r1, double r2,
                   int samples, std::uint64_t seed, int m,
                   const OutputSink& sink) {
  QProfile profile = profile_by_name(profile_name, n);
  RingQReport report;
  if (m > 0) {
    const auto family_profile = family_profile_by_name(profile_name, n);
    const auto map = build_truncated_map(family_profile, m, n);
    auto base = family_profile.exact_radial_mean;
    auto truncated = make_radial_profile(n, [base, m](double r) {
      return r > 1.0 / m ? base(r) : 1.0;
    });
    report = verify_ring_q_inequality(map, truncated, r1, r2, samples, seed);
  } else {
    report = verify_ring_q_inequality(RadialMap::identity(n), profile, r1, r2,
                                      samples, seed);
  }
  Table table({"lhs", "worst_slack", "extremal_slack", "violations",
               "samples"});
  table.add_row({report.lhs, report.worst_slack, report.extremal_slack,
                 static_cast<long long>(report.violations),
                 static_cast<long long>(report.samples)});
  sink.write(table);
  return 0;  // violations are findings, not errors
}

int run_report_all(const std::string& out_dir, bool quick, std::uint64_t seed,
                   bool json) {
  namespace fs = std::filesystem;
  ReportOptions options;
  options.quick = quick;
  options.seed = seed;
  const auto outcomes = run_acceptance_criteria(options);
  const Table table = criteria_table(outcomes);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream out(fs::path(out_dir) /
                          (json ? "summary.json" : "summary.csv"),
                      std::ios::binary);
    json ? table.write_json(out) : table.write_csv(out);
  } else {
    json ? table.write_json(std::cout) : table.write_csv(std::cout);
  }
  bool all = true;
  for (const auto& outcome : outcomes) {
    std::cerr << (outcome.pass ? "[PASS] " : "[FAIL] ") << outcome.id << " "
              << outcome.name << " (" << format_double(outcome.seconds)
              << " s)\n";
    all = all && outcome.pass;
  }
  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ringq: moduli of curve families, condenser capacities, dilatation "
      "profiles, radial map families, distortion bounds, and the chordal "
      "set function.\n\nProfiles: const:K | log | log2 | powlog:C\n"
      "CSV schemas are fixed per subcommand; --json mirrors rows as objects."};
  app.require_subcommand(1);

  int n = 2, grid = 256, modulus_grid = 129, setfn_grid = 96;
  int samples = 100, m_max = 64, count = 16, member = 0;
  int fmo_k_min = 4, fmo_k_max = 20, fam_k_min = 3, fam_k_max = 12;
  double r1 = 0.5, r2 = 1.0, tol = 1e-5, eps0 = 0.3, domain_r = 1.2;
  double K = 2.0 * std::numbers::pi, p = 1.0, lambda = 0.0;
  double r_min = 1e-4, r_max = 0.9;
  std::vector<double> ring;
  std::uint64_t seed = 20240917ull;
  std::string profile = "const:1", set_text, set_file, dump_field, out_dir;
  bool quick = false;

  OutputSink sink;

  auto* capacity = app.add_subcommand(
      "capacity", "numeric ring capacity against the closed form");
  capacity->add_option("--n", n, "dimension (2 or 3)")->check(CLI::Range(2, 3));
  capacity->add_option("--ring", ring, "inner and outer radius")->expected(2);
  capacity->add_option("--r1", r1, "inner radius");
  capacity->add_option("--r2", r2, "outer radius");
  capacity->add_option("--grid", grid, "nodes per axis (>= 16)")
      ->check(CLI::Range(16, 1024));
  capacity->add_option("--tol", tol, "solver tolerance")
      ->check(CLI::PositiveNumber);
  capacity->add_option("--dump-field", dump_field,
                       "write the solved grid field (.csv or .bin)");
  add_output_flags(capacity, sink);

  auto* modulus = app.add_subcommand(
      "modulus", "connecting modulus of concentric plates in a box");
  modulus->add_option("--n", n, "dimension")->check(CLI::Range(2, 3));
  modulus->add_option("--r1", r1, "plate radius");
  modulus->add_option("--r2", r2, "shell radius");
  modulus->add_option("--domain-r", domain_r, "half-width of the box domain");
  modulus->add_option("--grid", modulus_grid, "nodes per axis")
      ->check(CLI::Range(16, 1024));
  modulus->add_option("--tol", tol, "solver tolerance")
      ->check(CLI::PositiveNumber);
  add_output_flags(modulus, sink);

  auto* qmean = app.add_subcommand("qmean", "spherical means of a profile");
  qmean->add_option("--profile", profile, "profile name")->required();
  qmean->add_option("--n", n, "dimension")->check(CLI::Range(2, 8));
  qmean->add_option("--count", count, "number of radii");
  qmean->add_option("--r-min", r_min, "smallest radius");
  qmean->add_option("--r-max", r_max, "largest radius");
  add_output_flags(qmean, sink);

  auto* fmo = app.add_subcommand("fmo", "mean-oscillation sweep of a profile");
  fmo->add_option("--profile", profile, "profile name")->required();
  fmo->add_option("--n", n, "dimension")->check(CLI::Range(2, 3));
  fmo->add_option("--k-min", fmo_k_min, "first halving exponent");
  fmo->add_option("--k-max", fmo_k_max, "last halving exponent");
  add_output_flags(fmo, sink);

  auto* dini = app.add_subcommand(
      "dini", "convergence probe of the mean-integral near zero");
  dini->add_option("--profile", profile, "profile name")->required();
  dini->add_option("--n", n, "dimension")->check(CLI::Range(2, 8));
  dini->add_option("--eps0", eps0, "outer radius")->check(CLI::PositiveNumber);
  add_output_flags(dini, sink);

  auto* bounds = app.add_subcommand("bounds", "constant pack and envelopes");
  bounds->add_option("--n", n, "dimension")->check(CLI::Range(2, 8));
  bounds->add_option("--K", K, "integral comparison constant");
  bounds->add_option("--p", p, "integral exponent");
  bounds->add_option("--lambda", lambda, "lambda_n (0 = default)");
  std::string measure_profile;
  bounds->add_option("--measure-family", measure_profile,
                     "emit a measured-vs-bound table for this profile's "
                     "truncated family instead of the constant pack");
  bounds->add_option("--m-max", m_max, "family size for --measure-family");
  bounds->add_option("--eps0", eps0, "envelope outer radius");
  add_output_flags(bounds, sink);

  auto* family = app.add_subcommand(
      "family", "truncated radial family experiment (m, r, h table)");
  family->add_option("--profile", profile, "profile name")->required();
  family->add_option("--n", n, "dimension")->check(CLI::Range(2, 8));
  family->add_option("--m-max", m_max, "largest truncation index")
      ->check(CLI::Range(1, 100000));
  family->add_option("--k-min", fam_k_min, "first radius exponent");
  family->add_option("--k-max", fam_k_max, "last radius exponent");
  add_output_flags(family, sink);

  auto* setfn = app.add_subcommand("setfn", "chordal set function c(E)");
  setfn->add_option("--set", set_text, "inline set description");
  setfn->add_option("--set-file", set_file, "set description file");
  setfn->add_option("--n", n, "dimension")->check(CLI::Range(2, 3));
  setfn->add_option("--grid", setfn_grid, "chart grid resolution")
      ->check(CLI::Range(16, 512));
  setfn->add_option("--tol", tol, "solver tolerance")
      ->check(CLI::PositiveNumber);
  add_output_flags(setfn, sink);

  auto* verify = app.add_subcommand(
      "verify-eq2", "ring inequality against random admissible densities");
  verify->add_option("--profile", profile, "profile name")->required();
  verify->add_option("--n", n, "dimension")->check(CLI::Range(2, 8));
  verify->add_option("--r1", r1, "inner radius");
  verify->add_option("--r2", r2, "outer radius");
  verify->add_option("--samples", samples, "random densities")
      ->check(CLI::Range(1, 100000));
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--m", member,
                     "truncation index (0 = identity map against profile)");
  add_output_flags(verify, sink);

  auto* report = app.add_subcommand(
      "report-all", "run the verification suite and emit a summary table");
  report->add_option("--out", out_dir, "output directory (default: stdout)");
  report->add_flag("--quick", quick, "reduced grids and sample counts");
  report->add_option("--seed", seed, "random seed");
  report->add_flag_callback(
      "--json", [&sink]() { sink.json = true; }, "write summary.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (capacity->parsed()) {
      if (ring.size() == 2) {
        r1 = ring[0];
        r2 = ring[1];
      }
      if (!(r1 > 0.0 && r1 < r2))
        throw std::invalid_argument("need 0 < r1 < r2");
      return run_capacity(n, r1, r2, grid, tol, dump_field, sink);
    }
    if (modulus->parsed()) {
      if (!(r1 > 0.0 && r1 < r2 && r2 < domain_r))
        throw std::invalid_argument("need 0 < r1 < r2 < domain-r");
      return run_modulus(n, r1, r2, domain_r, modulus_grid, tol, sink);
    }
    if (qmean->parsed()) {
      if (!(r_min > 0.0 && r_min < r_max && r_max < 1.0))
        throw std::invalid_argument("need 0 < r-min < r-max < 1");
      return run_qmean(profile, n, count, r_min, r_max, sink);
    }
    if (fmo->parsed()) {
      if (fmo_k_min < 1 || fmo_k_max < fmo_k_min)
        throw std::invalid_argument("need 1 <= k-min <= k-max");
      return run_fmo(profile, n, fmo_k_min, fmo_k_max, sink);
    }
    if (dini->parsed()) {
      if (!(eps0 > 0.0 && eps0 < 1.0))
        throw std::invalid_argument("need 0 < eps0 < 1");
      return run_dini(profile, n, eps0, sink);
    }
    if (bounds->parsed()) {
      if (!measure_profile.empty())
        return run_bounds_family(measure_profile, n, m_max, eps0,
                                 lambda > 0 ? 2.0 * lambda * lambda : 32.0,
                                 sink);
      return run_bounds(n, K, p, lambda, sink);
    }
    if (family->parsed()) {
      if (fam_k_min < 1 || fam_k_max < fam_k_min)
        throw std::invalid_argument("need 1 <= k-min <= k-max");
      return run_family(profile, n, m_max, fam_k_min, fam_k_max, sink);
    }
    if (setfn->parsed()) {
      if (set_text.empty() == set_file.empty())
        throw std::invalid_argument("provide exactly one of --set, --set-file");
      return run_setfn(set_text, set_file, n, setfn_grid, tol, sink);
    }
    if (verify->parsed()) {
      if (!(r1 > 0.0 && r1 < r2))
        throw std::invalid_argument("need 0 < r1 < r2");
      return run_verify_eq2(profile, n, r1, r2, samples, seed, member, sink);
    }
    if (report->parsed()) return run_report_all(out_dir, quick, seed, sink.json);
  } catch (const ConvergenceError& err) {
    std::cerr << "convergence error: " << err.what()
              << " (residual " << err.last_residual << ")\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 1;
}
