#include "ringq/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "ringq/errors.hpp"
#include "ringq/geom.hpp"

namespace ringq {

BoundConstants make_constants(int n, double K, double p,
                              std::optional<double> lambda) {
  if (n < 2) throw std::invalid_argument("make_constants: n >= 2");
  if (!(K > 0.0)) throw std::invalid_argument("make_constants: K > 0");
  if (p > n) throw std::invalid_argument("make_constants: p must be <= n");
  const double lambda_hi = 2.0 * std::exp(n - 1.0);
  double lam;
  if (lambda.has_value()) {
    lam = *lambda;
    if (lam < 4.0 || lam >= lambda_hi)
      throw std::invalid_argument("make_constants: lambda outside [4, 2e^{n-1})");
  } else {
    lam = (n == 2) ? 4.0 : 0.5 * (4.0 + lambda_hi);
  }
  BoundConstants c;
  c.n = n;
  c.lambda_n = lam;
  c.K = K;
  c.p = p;
  c.omega_prev = omega(n);
  c.alpha_n = 2.0 * lam * lam;
  c.beta_n = std::pow(c.omega_prev / K, 1.0 / (n - 1));
  c.beta_n_tilde = std::pow(c.omega_prev / (2.0 * K), 1.0 / (n - 1));
  c.gamma_np = 1.0 - (p - 1.0) / (n - 1.0);
  return c;
}

double envelope_bound(const BoundConstants& c, double delta, double I_val) {
  if (!(delta > 0.0) || delta > 1.0)
    throw std::invalid_argument("envelope_bound: delta in (0, 1]");
  if (I_val < 0.0) throw std::invalid_argument("envelope_bound: I >= 0");
  return (c.alpha_n / delta) *
         std::exp(-c.beta_n * std::pow(I_val, c.gamma_np));
}

double weak_envelope_bound(const BoundConstants& c, double I_val) {
  if (I_val < 0.0) throw std::invalid_argument("weak_envelope_bound: I >= 0");
  return c.alpha_n * std::exp(-c.beta_n_tilde * std::pow(I_val, c.gamma_np));
}

double log_growth_bound(double C_n, double p, double dist) {
  if (!(C_n > 0.0) || !(p > 0.0))
    throw std::invalid_argument("log_growth_bound: C_n, p > 0");
  if (!(dist > 0.0) || dist >= 1.0)
    throw std::invalid_argument("log_growth_bound: dist in (0, 1)");
  return C_n * std::pow(1.0 / std::log(1.0 / dist), p);
}

double mean_integral_envelope(const QProfile& Q, double eps0, double dist,
                      double alpha_n) {
  if (!(dist > 0.0) || !(dist <= eps0))
    throw std::invalid_argument("mean_integral_envelope: need 0 < dist <= eps0");
  if (dist == eps0) return alpha_n;
  const double exponent = 1.0 / (Q.n - 1);
  const double I = radial_integral(
      [&](double t) {
        const double q = q_mean(Q, t);
        if (q <= 0.0)
          throw DegenerateProfileError(
              "mean_integral_envelope: vanishing spherical mean");
        return 1.0 / (t * std::pow(q, exponent));
      },
      dist, eps0);
  return alpha_n * std::exp(-I);
}

double reciprocal_log_bound(double M, double C, int n, double dist) {
  if (!(C > 0.0)) throw std::invalid_argument("reciprocal_log_bound: C > 0");
  if (!(dist > 0.0) || dist >= 1.0)
    throw std::invalid_argument("reciprocal_log_bound: dist in (0, 1)");
  const double exponent = std::pow(1.0 / C, 1.0 / (n - 1));
  return M / std::pow(std::log(1.0 / dist), exponent);
}

FamilyBoundReport check_bound_on_family(const MapFamily& family,
                                        const BoundSpec& bound,
                                        std::span<const double> radii) {
  FamilyBoundReport report;
  const int n = family.n;
  std::vector<double> origin(n, 0.0);
  bool first = true;
  for (std::size_t mi = 0; mi < family.members.size(); ++mi) {
    const RadialMap& f = family.members[mi];
    for (double r : radii) {
      if (!(r > 0.0) || r > f.domain_radius()) continue;
      std::vector<double> fx(n, 0.0);
      fx[0] = f.rho(r);
      FamilyBoundRow row;
      row.m = family.m_values[mi];
      row.radius = r;
      row.measured = chordal_distance(fx, origin);
      row.bound = bound.eval(r);
      row.slack = row.bound - row.measured;
      if (row.slack < 0.0) ++report.violations;
      if (first || row.slack < report.worst_slack)
        report.worst_slack = row.slack;
      first = false;
      report.rows.push_back(row);
    }
  }
  return report;
}

}  // namespace ringq
