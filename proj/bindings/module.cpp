// Python bindings for the main operations: chordal geometry, quadrature
// constants, ring capacities, profile diagnostics, radial families,
// distortion bounds, and the chordal set function.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "ringq/bounds.hpp"
#include "ringq/geom.hpp"
#include "ringq/maps.hpp"
#include "ringq/modulus.hpp"
#include "ringq/profiles.hpp"
#include "ringq/qprofile.hpp"
#include "ringq/quadrature.hpp"
#include "ringq/report.hpp"
#include "ringq/setfn.hpp"

namespace py = pybind11;
using namespace ringq;

namespace {

ExtPoint as_point(const std::optional<std::vector<double>>& coords, int n) {
  if (coords.has_value()) return ExtPoint::finite(*coords);
  return ExtPoint::infinity(n);
}

py::dict constants_dict(const BoundConstants& c) {
  py::dict d;
  d["n"] = c.n;
  d["lambda_n"] = c.lambda_n;
  d["K"] = c.K;
  d["p"] = c.p;
  d["alpha_n"] = c.alpha_n;
  d["beta_n"] = c.beta_n;
  d["beta_n_tilde"] = c.beta_n_tilde;
  d["gamma_np"] = c.gamma_np;
  d["omega_prev"] = c.omega_prev;
  return d;
}

}  // namespace

PYBIND11_MODULE(_ringq, m) {
  m.doc() =
      "Moduli of curve families, condenser capacities, dilatation profiles, "
      "radial map families, distortion bounds, and the chordal set function.";

  m.def("omega", &omega, py::arg("n"),
        "Surface area of the unit sphere in n-space.");
  m.def("ball_volume", &ball_volume, py::arg("n"),
        "Volume of the unit ball in n-space.");

  m.def(
      "chordal_distance",
      [](const std::optional<std::vector<double>>& a,
         const std::optional<std::vector<double>>& b, int n) {
        return chordal_distance(as_point(a, n), as_point(b, n));
      },
      py::arg("a"), py::arg("b"), py::arg("n") = 2,
      "Chordal distance; None stands for the point at infinity.");
  m.def(
      "antipodal",
      [](const std::optional<std::vector<double>>& a,
         int n) -> std::optional<std::vector<double>> {
        const ExtPoint image = antipodal(as_point(a, n));
        if (image.is_infinity()) return std::nullopt;
        return image.coords();
      },
      py::arg("a"), py::arg("n") = 2,
      "The involution -x/|x|^2 with 0 <-> infinity (None).");

  m.def("ring_modulus_exact", &ring_modulus_exact, py::arg("r1"),
        py::arg("r2"), py::arg("n"));
  m.def("capacity_upper_bound", &capacity_upper_bound, py::arg("F_val"),
        py::arg("I_val"), py::arg("n"));
  m.def("capacity_lower_bound", &capacity_lower_bound,
        py::arg("h_image"), py::arg("h_complement"), py::arg("n"),
        py::arg("lambda_n"));

  m.def(
      "capacity_ring",
      [](int n, double r1, double r2, int grid, double tol) {
        Condenser condenser;
        condenser.A = RegionBall{std::vector<double>(n, 0.0), r2};
        condenser.C = make_ball_set(std::vector<double>(n, 0.0), r1);
        condenser.n = n;
        condenser.resolution = grid;
        const auto result = capacity_numeric(condenser, tol);
        py::dict d;
        d["value"] = result.value;
        d["exact"] = ring_modulus_exact(r1, r2, n);
        d["iterations"] = result.iterations;
        d["residual"] = result.residual;
        return d;
      },
      py::arg("n"), py::arg("r1"), py::arg("r2"), py::arg("grid") = 96,
      py::arg("tol") = 1e-5,
      "Grid capacity of the spherical ring condenser.");

  m.def(
      "q_mean",
      [](const std::string& profile, int n, double r) {
        return q_mean(profile_by_name(profile, n), r);
      },
      py::arg("profile"), py::arg("n"), py::arg("r"),
      "Spherical mean of a named profile (const:K | log | log2 | powlog:C).");
  m.def(
      "dini",
      [](const std::string& profile, int n, double eps0) {
        const auto result = dini_integral(profile_by_name(profile, n), eps0);
        return py::make_tuple(result.value, result.diverges);
      },
      py::arg("profile"), py::arg("n"), py::arg("eps0"),
      "(value, diverges) for the mean-integral near zero.");
  m.def(
      "fmo_sweep",
      [](const std::string& profile, int n, int k_min, int k_max) {
        const auto p = profile_by_name(profile, n);
        std::vector<double> out;
        for (int k = k_min; k <= k_max; ++k)
          out.push_back(fmo_oscillation(p.evaluate, p.center,
                                        std::pow(0.5, k), p.rule));
        return out;
      },
      py::arg("profile"), py::arg("n"), py::arg("k_min") = 4,
      py::arg("k_max") = 12,
      "Mean oscillation over balls of radius 2^-k.");
  m.def("psi_canonical", &psi_canonical, py::arg("t"));

  m.def(
      "make_constants",
      [](int n, double K, double p, std::optional<double> lambda) {
        return constants_dict(make_constants(n, K, p, lambda));
      },
      py::arg("n"), py::arg("K"), py::arg("p"),
      py::arg("lambda") = std::nullopt);
  m.def(
      "mean_integral_envelope",
      [](const std::string& profile, int n, double eps0, double dist,
         double alpha) {
        return mean_integral_envelope(profile_by_name(profile, n), eps0, dist, alpha);
      },
      py::arg("profile"), py::arg("n"), py::arg("eps0"), py::arg("dist"),
      py::arg("alpha") = 32.0);
  m.def("log_growth_bound", &log_growth_bound, py::arg("C_n"), py::arg("p"),
        py::arg("dist"));
  m.def("reciprocal_log_bound", &reciprocal_log_bound, py::arg("M"), py::arg("C"), py::arg("n"),
        py::arg("dist"));

  m.def(
      "truncated_map_rho",
      [](const std::string& profile, int n, int mm, double r) {
        return build_truncated_map(family_profile_by_name(profile, n), mm, n).rho(r);
      },
      py::arg("profile"), py::arg("n"), py::arg("m"), py::arg("r"),
      "Truncated-profile radial map value at radius r.");
  m.def(
      "inner_dilatation",
      [](const std::string& profile, int n, int mm, double r) {
        return inner_dilatation_radial(
            build_truncated_map(family_profile_by_name(profile, n), mm, n), r);
      },
      py::arg("profile"), py::arg("n"), py::arg("m"), py::arg("r"));
  m.def(
      "family_experiment",
      [](const std::string& profile, int n, int m_max,
         const std::vector<double>& radii) {
        const auto family =
            build_truncated_family(family_profile_by_name(profile, n), m_max, n);
        const auto report = equicontinuity_experiment(family, radii);
        std::vector<std::tuple<int, double, double>> rows;
        for (const auto& row : report.rows)
          rows.emplace_back(row.m, row.r, row.h);
        return rows;
      },
      py::arg("profile"), py::arg("n"), py::arg("m_max"), py::arg("radii"),
      "Rows (m, r, h) of the equicontinuity table.");
  m.def(
      "verify_eq2",
      [](const std::string& profile, int n, double r1, double r2, int samples,
         std::uint64_t seed) {
        const auto report = verify_ring_q_inequality(
            RadialMap::identity(n), profile_by_name(profile, n), r1, r2,
            samples, seed);
        py::dict d;
        d["lhs"] = report.lhs;
        d["worst_slack"] = report.worst_slack;
        d["extremal_slack"] = report.extremal_slack;
        d["violations"] = report.violations;
        d["samples"] = report.samples;
        return d;
      },
      py::arg("profile"), py::arg("n"), py::arg("r1"), py::arg("r2"),
      py::arg("samples") = 50, py::arg("seed") = 20240917ull,
      "Ring inequality for the identity map against a named profile.");

  m.def(
      "c_set",
      [](const std::string& set_text, int n, int grid, double tol) {
        const auto set = parse_compact_set(set_text, n);
        SetFnOptions options;
        options.resolution = grid;
        const auto result = c_set(set, default_x_grid(n), tol, options);
        return py::make_tuple(result.c_value, result.values);
      },
      py::arg("set_text"), py::arg("n") = 2, py::arg("grid") = 64,
      py::arg("tol") = 1e-5,
      "Chordal set function from a text description (point/ball/segment/"
      "shell/box lines).");
  m.def(
      "set_function_lower_bound",
      [](double c_fC, double c_Ef, double beta_vu, double a_vu, int n) {
        const auto b = set_function_lower_bound(c_fC, c_Ef, beta_vu, a_vu, n);
        py::dict d;
        d["min_form"] = b.min_form;
        d["diameter_form"] = b.diameter_form;
        d["c_n"] = b.c_n;
        d["h_derived"] = b.h_derived;
        d["min_branch_is_fC"] = b.min_branch_is_fC;
        return d;
      },
      py::arg("c_fC"), py::arg("c_Ef"), py::arg("beta_vu") = 1.0,
      py::arg("a_vu") = 1.0, py::arg("n") = 2);
  m.def("displacement_estimate", &displacement_estimate, py::arg("alpha"),
        py::arg("c_n"), py::arg("delta"));

  m.def(
      "run_criteria",
      [](bool quick, std::uint64_t seed) {
        ReportOptions options;
        options.quick = quick;
        options.seed = seed;
        const auto outcomes = run_acceptance_criteria(options);
        py::list rows;
        for (const auto& outcome : outcomes) {
          py::dict d;
          d["id"] = outcome.id;
          d["name"] = outcome.name;
          d["pass"] = outcome.pass;
          d["detail"] = outcome.detail;
          rows.append(d);
        }
        return rows;
      },
      py::arg("quick") = true, py::arg("seed") = 20240917ull,
      "Run the verification suite; quick=True uses reduced sizes.");
}
