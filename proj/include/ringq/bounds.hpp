#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ringq/maps.hpp"
#include "ringq/qprofile.hpp"

namespace ringq {

/// The constant pack of the distortion bounds: alpha_n = 2 lambda_n^2,
/// beta_n = (omega_{n-1}/K)^{1/(n-1)}, its weaker variant with 2K, and the
/// exponent gamma_{n,p} = 1 - (p-1)/(n-1).
struct BoundConstants {
  int n = 2;
  double lambda_n = 4.0;
  double K = 1.0;
  double p = 1.0;
  double alpha_n = 32.0;
  double beta_n = 1.0;
  double beta_n_tilde = 1.0;
  double gamma_np = 1.0;
  double omega_prev = 0.0;  // omega_{n-1}
};

/// Populates the pack; lambda defaults to 4 for n = 2 and to the midpoint
/// of the admissible interval [4, 2e^{n-1}) otherwise.
BoundConstants make_constants(int n, double K, double p,
                              std::optional<double> lambda = std::nullopt);

/// (alpha_n / delta) exp(-beta_n I^{gamma_{n,p}}).
double envelope_bound(const BoundConstants& c, double delta, double I_val);

/// alpha_n exp(-beta_n_tilde I^{gamma_{n,p}}), the equicontinuity
/// characterization form with the weaker constant.
double weak_envelope_bound(const BoundConstants& c, double I_val);

/// C_n (1/log(1/dist))^p, the logarithmic order-of-growth bound.
double log_growth_bound(double C_n, double p, double dist);

/// alpha_n exp(-integral_dist^eps0 dt/(t q^{1/(n-1)}(t))) by quadrature.
double mean_integral_envelope(const QProfile& Q, double eps0, double dist,
                      double alpha_n);

/// M / (log(1/dist))^{(1/C)^{1/(n-1)}}.
double reciprocal_log_bound(double M, double C, int n, double dist);

struct BoundSpec {
  std::string label;
  std::function<double(double)> eval;  // bound as a function of distance
};

struct FamilyBoundRow {
  int m = 0;
  double radius = 0.0;
  double measured = 0.0;  // chordal displacement of the member at the radius
  double bound = 0.0;
  double slack = 0.0;  // bound - measured
};

struct FamilyBoundReport {
  std::vector<FamilyBoundRow> rows;
  int violations = 0;
  double worst_slack = 0.0;
};

/// Measured chordal displacement against the chosen bound on a radius grid;
/// violations are findings.
FamilyBoundReport check_bound_on_family(const MapFamily& family,
                                        const BoundSpec& bound,
                                        std::span<const double> radii);

}  // namespace ringq
