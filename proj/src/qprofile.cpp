#include "ringq/qprofile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ringq/errors.hpp"
#include "ringq/geom.hpp"

namespace ringq {

QProfile make_radial_profile(int n, std::function<double(double)> qr,
                             double domain_radius) {
  QProfile profile;
  profile.n = n;
  profile.center.assign(n, 0.0);
  profile.domain_radius = domain_radius;
  profile.rule = QuadratureRule::for_dim(n);
  auto fn = qr;
  profile.evaluate = [fn](std::span<const double> x) {
    return fn(vec::norm(x));
  };
  profile.exact_radial_mean = std::move(qr);
  return profile;
}

QProfile make_profile(int n, ScalarField field, std::vector<double> center,
                      double domain_radius) {
  QProfile profile;
  profile.n = n;
  profile.evaluate = std::move(field);
  profile.center = std::move(center);
  if (static_cast<int>(profile.center.size()) != n)
    throw std::invalid_argument("make_profile: center dimension mismatch");
  profile.domain_radius = domain_radius;
  profile.rule = QuadratureRule::for_dim(n);
  return profile;
}

void validate_profile(const QProfile& profile) {
  if (!profile.exact_radial_mean) return;
  for (double frac : {0.03, 0.1, 0.3, 0.7}) {
    const double r = frac * profile.domain_radius;
    const double exact = profile.exact_radial_mean(r);
    const double area = omega(profile.n) * std::pow(r, profile.n - 1);
    const double quad =
        sphere_integral(profile.evaluate, profile.center, r, profile.rule) /
        area;
    const double scale = std::max({1e-12, std::abs(exact), std::abs(quad)});
    if (std::abs(exact - quad) > 1e-6 * scale)
      throw std::invalid_argument(
          "QProfile: exact_radial_mean disagrees with quadrature mean");
  }
}

double q_mean(const QProfile& profile, double r) {
  if (!(r > 0.0) || !(r < profile.domain_radius))
    throw std::invalid_argument("q_mean: r outside (0, domain_radius)");
  if (profile.exact_radial_mean) return profile.exact_radial_mean(r);
  const double area = omega(profile.n) * std::pow(r, profile.n - 1);
  return sphere_integral(profile.evaluate, profile.center, r, profile.rule) /
         area;
}

double PsiFunction::operator()(double t) const {
  if (support_hi > 0.0 && (t <= support_lo || t >= support_hi)) return 0.0;
  return evaluate(t);
}

IntegralValue I_integral(const PsiFunction& psi, double eps, double eps0,
                         int panels, double cap) {
  if (!(eps > 0.0) || !(eps < eps0))
    throw std::invalid_argument("I_integral: need 0 < eps < eps0");
  IntegralValue out;
  out.value =
      radial_integral([&](double t) { return psi(t); }, eps, eps0, panels);
  out.diverged = !(out.value < cap);
  return out;
}

double psi_canonical(double t) {
  if (!(t > 0.0) || t >= 1.0)
    throw std::invalid_argument("psi_canonical: need 0 < t < 1");
  return 1.0 / (t * std::log(1.0 / t));
}

PsiFunction make_psi_canonical() {
  PsiFunction psi;
  psi.evaluate = [](double t) { return psi_canonical(t); };
  psi.label = "1/(t log(1/t))";
  return psi;
}

PsiFunction psi_from_q(const QProfile& profile, double eps, double eps0) {
  if (!(eps > 0.0) || !(eps < eps0))
    throw std::invalid_argument("psi_from_q: need 0 < eps < eps0");
  const double exponent = 1.0 / (profile.n - 1);
  // Reject profiles whose mean vanishes on a subinterval: psi would be
  // infinite on a set of positive measure.
  int zero_run = 0;
  for (int k = 0; k <= 24; ++k) {
    const double t = eps * std::pow(eps0 / eps, k / 24.0);
    const double q = q_mean(profile, std::min(t, eps0 * (1.0 - 1e-12)));
    zero_run = (q <= 0.0) ? zero_run + 1 : 0;
    if (zero_run >= 2)
      throw DegenerateProfileError(
          "psi_from_q: spherical mean vanishes on a subinterval");
  }
  PsiFunction psi;
  psi.support_lo = eps;
  psi.support_hi = eps0;
  psi.label = "1/(t q^{1/(n-1)}(t))";
  const QProfile snapshot = profile;
  psi.evaluate = [snapshot, exponent](double t) {
    const double q = q_mean(snapshot, t);
    if (q <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (t * std::pow(q, exponent));
  };
  return psi;
}

DiniResult dini_integral(const QProfile& profile, double eps0,
                         const DiniOptions& options) {
  if (!(eps0 > 0.0)) throw std::invalid_argument("dini_integral: eps0 > 0");
  const double exponent = 1.0 / (profile.n - 1);
  auto integrand = [&](double t) {
    const double q = q_mean(profile, t);
    if (q <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (t * std::pow(q, exponent));
  };

  DiniResult result;
  std::vector<double> increments;
  increments.reserve(options.k_max);
  double upper = eps0 * (1.0 - 1e-12);  // stay inside the domain
  double partial = 0.0;
  for (int k = 1; k <= options.k_max; ++k) {
    const double lower = eps0 * std::pow(0.5, k);
    const double piece =
        radial_integral(integrand, lower, upper, options.panels);
    partial += piece;
    increments.push_back(piece);
    upper = lower;
  }
  result.halvings = options.k_max;
  result.last_increment = increments.back();
  result.value = partial;

  // Tail exponent p from least squares on log d_k vs log k; increments that
  // behave like k^{-p} with p <= 1 belong to a divergent series.
  const int fit_window = std::min<int>(8, options.k_max / 2);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (int i = options.k_max - fit_window; i < options.k_max; ++i) {
    const double d = increments[i];
    if (!(d > 1e-300)) continue;
    const double x = std::log(static_cast<double>(i + 1));
    const double y = std::log(d);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  double p_fit = std::numeric_limits<double>::infinity();
  if (count >= 3) {
    const double denom = count * sxx - sx * sx;
    if (std::abs(denom) > 1e-30) p_fit = -(count * sxy - sx * sy) / denom;
  }
  result.tail_exponent = p_fit;

  bool sustained_growth = true;
  for (int i = options.k_max - options.tail_window; i < options.k_max; ++i)
    sustained_growth =
        sustained_growth && increments[i] > options.increment_threshold;

  const bool vanishing_tail = result.last_increment < 1e-12;
  result.diverges =
      sustained_growth || (!vanishing_tail && p_fit <= 1.05);

  if (!result.diverges && result.last_increment > 0.0 &&
      std::isfinite(p_fit) && p_fit > 1.05) {
    // Power-law tail estimate: sum_{k>K} d_K (k/K)^{-p} by midpoint integral.
    const double K = options.k_max;
    result.value += result.last_increment * (K + 0.5) *
                    std::pow((K + 0.5) / K, -p_fit) / (p_fit - 1.0);
  }
  return result;
}

double fmo_oscillation(const ScalarField& phi, std::span<const double> x0,
                       double eps, const QuadratureRule& rule) {
  if (!(eps > 0.0)) throw std::invalid_argument("fmo_oscillation: eps > 0");
  const int n = static_cast<int>(x0.size());
  // Ball integrals as annulus integrals with a negligible inner truncation;
  // the t^{n-1} weight absorbs integrable singularities at the center.
  const double inner = eps * 1e-8;
  const double volume = ball_volume(n) * std::pow(eps, n);
  const double mean =
      annulus_integral(phi, x0, inner, eps, rule) / volume;
  const double osc = annulus_integral(
      [&](std::span<const double> x) { return std::abs(phi(x) - mean); }, x0,
      inner, eps, rule);
  return osc / volume;
}

SufficientConditionReport check_sufficient_conditions(const QProfile& profile, double eps0,
                                         const SufficientConditionOptions& options) {
  SufficientConditionReport report;
  const int n = profile.n;

  // Condition 1: oscillation sweep over shrinking balls. Finite mean
  // oscillation shows up as a bounded sweep; steady growth over the last
  // halvings flags failure.
  {
    std::vector<double> osc;
    for (int k = options.fmo_k_min; k <= options.fmo_k_max; ++k) {
      const double eps = std::pow(0.5, k) * profile.domain_radius;
      osc.push_back(
          fmo_oscillation(profile.evaluate, profile.center, eps, profile.rule));
    }
    report.fmo_max_oscillation =
        *std::max_element(osc.begin(), osc.end());
    int growing = 0;
    for (std::size_t i = 1; i < osc.size(); ++i)
      if (osc[i] > osc[i - 1] * 1.02 + 1e-12) ++growing;
    const bool monotone_growth = growing >= static_cast<int>(osc.size()) - 2;
    report.fmo_holds =
        !(monotone_growth && osc.back() > 4.0 * osc.front() + 1e-12);
  }

  // Condition 2: fitted constant in q(r) <= C log^{n-1}(1/r). The ratio
  // sequence must stay bounded as r -> 0.
  {
    std::vector<double> ratio;
    for (int k = 2; k <= options.growth_k_max; ++k) {
      const double r = std::pow(0.5, k) * std::min(eps0, profile.domain_radius);
      if (r >= 0.3678794411714423) continue;  // need log(1/r) > 1
      const double denom = std::pow(std::log(1.0 / r), n - 1);
      ratio.push_back(q_mean(profile, r) / denom);
    }
    report.log_growth_constant =
        *std::max_element(ratio.begin(), ratio.end());
    const std::size_t half = ratio.size() / 2;
    double head = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < half; ++i) head = std::max(head, ratio[i]);
    for (std::size_t i = half; i < ratio.size(); ++i)
      tail = std::max(tail, ratio[i]);
    report.log_growth_holds = tail <= head * 1.25 + 1e-12;
  }

  DiniOptions dini_options = options.dini;
  report.dini = dini_integral(profile, std::min(eps0, profile.domain_radius),
                              dini_options);
  report.dini_diverges = report.dini.diverges;
  return report;
}

LittleOReport check_little_o_condition(const QProfile& profile,
                                const PsiFunction& psi, double eps0,
                                int k_max) {
  LittleOReport report;
  const int n = profile.n;
  for (int k = 1; k <= k_max; ++k) {
    const double eps = eps0 * std::pow(0.5, k);
    PsiFunction clipped = psi;
    clipped.support_lo = eps;
    clipped.support_hi = eps0;
    const IntegralValue I = I_integral(clipped, eps, eps0);
    if (!(I.value > 0.0))
      throw DegenerateProfileError("check_little_o_condition: I = 0");
    const auto center = profile.center;
    const double weighted = annulus_integral(
        [&](std::span<const double> x) {
          std::vector<double> d(x.size());
          for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - center[i];
          const double t = vec::norm(d);
          const double density = clipped(t);
          return profile.evaluate(x) * std::pow(density, n);
        },
        center, eps, eps0, profile.rule);
    report.eps.push_back(eps);
    report.ratio.push_back(weighted / std::pow(I.value, n));
  }
  // Trend call: the tail must sit well below the head and keep shrinking.
  const double head = report.ratio.front();
  const double tail = report.ratio.back();
  bool shrinking = std::isfinite(tail) && tail < 0.5 * head;
  const std::size_t m = report.ratio.size();
  if (m >= 3)
    shrinking = shrinking && report.ratio[m - 1] < report.ratio[m - 3];
  report.trends_to_zero = shrinking;
  return report;
}

}  // namespace ringq
