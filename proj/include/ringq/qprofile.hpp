#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ringq/quadrature.hpp"

namespace ringq {

/// An evaluable dilatation profile Q on a neighborhood of a center point.
/// When the spherical mean about the center is known in closed form it can
/// be supplied as exact_radial_mean; q_mean() then skips quadrature.
struct QProfile {
  ScalarField evaluate;
  std::vector<double> center;
  double domain_radius = 1.0;
  int n = 2;
  std::function<double(double)> exact_radial_mean;  // optional
  QuadratureRule rule = QuadratureRule{};

  int dim() const { return n; }
};

/// Builds a radially symmetric profile Q(x) = qr(|x - x0|) about the origin;
/// the exact radial mean is the function itself.
QProfile make_radial_profile(int n, std::function<double(double)> qr,
                             double domain_radius = 1.0);

/// Builds a profile from an arbitrary field, with quadrature-backed means.
QProfile make_profile(int n, ScalarField field, std::vector<double> center,
                      double domain_radius = 1.0);

/// Checks a supplied exact_radial_mean against quadrature means on a probe
/// grid; throws std::invalid_argument on relative mismatch above 1e-6.
void validate_profile(const QProfile& profile);

/// Spherical mean q_{x0}(r) of Q over |x - x0| = r.
double q_mean(const QProfile& profile, double r);

/// A nonnegative density on a radial interval, as used in admissibility
/// integrals. Zero outside [support_lo, support_hi] when those are set.
struct PsiFunction {
  std::function<double(double)> evaluate;
  std::string label;
  double support_lo = 0.0;
  double support_hi = 0.0;  // 0 means unbounded support

  double operator()(double t) const;
};

struct IntegralValue {
  double value = 0.0;
  bool diverged = false;  // numeric value exceeded the configured cap
};

/// I(eps, eps0) = integral of psi over (eps, eps0) by radial quadrature.
IntegralValue I_integral(const PsiFunction& psi, double eps, double eps0,
                         int panels = 32, double cap = 1e12);

/// The canonical density 1/(t log(1/t)); requires t < 1.
double psi_canonical(double t);
PsiFunction make_psi_canonical();

/// psi(t) = 1 / (t q_{x0}(t)^{1/(n-1)}) on (eps, eps0), zero outside.
PsiFunction psi_from_q(const QProfile& profile, double eps, double eps0);

struct DiniOptions {
  int k_max = 40;
  double increment_threshold = 0.05;
  int tail_window = 5;
  int panels = 32;
};

struct DiniResult {
  double value = 0.0;       // extrapolated when convergent, last partial else
  bool diverges = false;
  double tail_exponent = 0.0;   // p in d_k ~ k^{-p} fitted on the tail
  double last_increment = 0.0;
  int halvings = 0;
};

/// Probes the integral of dt/(t q^{1/(n-1)}(t)) near 0 on the geometric
/// sequence eps_k = eps0 2^{-k} and classifies convergence; the horizon and
/// thresholds are configuration, and the diagnostics are always reported.
DiniResult dini_integral(const QProfile& profile, double eps0,
                         const DiniOptions& options = {});

/// Normalized mean oscillation of phi over the ball B(x0, eps):
/// (1/(Omega_n eps^n)) * integral of |phi - mean| over the ball.
double fmo_oscillation(const ScalarField& phi, std::span<const double> x0,
                       double eps, const QuadratureRule& rule);

struct SufficientConditionReport {
  bool fmo_holds = false;
  double fmo_max_oscillation = 0.0;
  bool log_growth_holds = false;   // q(r) <= C log^{n-1}(1/r)
  double log_growth_constant = 0.0;
  bool dini_diverges = false;
  DiniResult dini;
};

struct SufficientConditionOptions {
  int fmo_k_min = 4;
  int fmo_k_max = 12;
  int growth_k_max = 16;
  DiniOptions dini;
};

/// Evaluates the three sufficient conditions (FMO probe, logarithmic mean
/// growth, divergent Dini integral) and reports the measured constants.
SufficientConditionReport check_sufficient_conditions(const QProfile& profile, double eps0,
                                         const SufficientConditionOptions& options = {});

struct LittleOReport {
  std::vector<double> eps;
  std::vector<double> ratio;  // annulus integral of Q psi^n over I^n
  bool trends_to_zero = false;
};

/// Little-o probe: the weighted annulus integral against I^n along a
/// halving sequence of inner radii.
LittleOReport check_little_o_condition(const QProfile& profile,
                                const PsiFunction& psi, double eps0,
                                int k_max = 16);

}  // namespace ringq
