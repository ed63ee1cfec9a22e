#include "ringq/maps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ringq/errors.hpp"
#include "ringq/geom.hpp"
#include "ringq/rng.hpp"

namespace ringq {

namespace {

constexpr double kCacheFloorRadius = 1e-8;
constexpr int kCacheIntervals = 4096;

}  // namespace

RadialMap RadialMap::from_function(int n, std::function<double(double)> rho,
                                   double domain_radius) {
  if (n < 2) throw std::invalid_argument("RadialMap: dimension >= 2");
  RadialMap map;
  map.n_ = n;
  map.radius_ = domain_radius;
  map.center_.assign(n, 0.0);
  map.image_center_.assign(n, 0.0);
  map.analytic_ = std::move(rho);
  // Strict monotonicity probe.
  double prev = 0.0;
  for (int k = 1; k <= 32; ++k) {
    const double r = domain_radius * k / 32.0;
    const double value = map.analytic_(r);
    if (!(value > prev))
      throw std::invalid_argument("RadialMap: profile not strictly increasing");
    prev = value;
  }
  return map;
}

RadialMap RadialMap::identity(int n, double domain_radius) {
  return from_function(
      n, [](double r) { return r; }, domain_radius);
}

double RadialMap::cached_exponent_integral(double u) const {
  const auto& c = cache_;
  if (u <= 0.0) return 0.0;
  if (u >= c.u.back()) {
    // Below the cache floor the truncated profile is identically 1, so the
    // integral continues linearly in u.
    return c.value.back() + (u - c.u.back());
  }
  const auto it = std::upper_bound(c.u.begin(), c.u.end(), u);
  const std::size_t i = static_cast<std::size_t>(it - c.u.begin()) - 1;
  const double u0 = c.u[i], u1 = c.u[i + 1];
  const double width = u1 - u0;
  const double tau = (u - u0) / width;
  const double g0 = c.value[i], g1 = c.value[i + 1];
  const double s0 = c.slope_left[i] * width, s1 = c.slope_right[i] * width;
  const double t2 = tau * tau, t3 = t2 * tau;
  return g0 * (2 * t3 - 3 * t2 + 1) + g1 * (-2 * t3 + 3 * t2) +
         s0 * (t3 - 2 * t2 + tau) + s1 * (t3 - t2);
}

double RadialMap::rho(double r) const {
  if (!(r > 0.0) || r > radius_ * (1.0 + 1e-12))
    throw OutOfDomainError("RadialMap::rho: r outside (0, domain_radius]");
  if (analytic_) return analytic_(r);
  return std::exp(-cached_exponent_integral(std::log(1.0 / r)));
}

double RadialMap::rho_prime(double r) const {
  const double step = 1e-6 * r;
  const bool near_kink = kink_ > 0.0 && std::abs(r - kink_) <= 10.0 * step;
  if (!near_kink && r + step <= radius_) {
    return (rho(r + step) - rho(r - step)) / (2.0 * step);
  }
  if (near_kink && r >= kink_ && r + 2 * step <= radius_) {
    // One-sided second order, staying above the kink.
    return (-3.0 * rho(r) + 4.0 * rho(r + step) - rho(r + 2 * step)) /
           (2.0 * step);
  }
  return (3.0 * rho(r) - 4.0 * rho(r - step) + rho(r - 2 * step)) /
         (2.0 * step);
}

std::vector<double> RadialMap::eval(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_)
    throw std::invalid_argument("RadialMap::eval: dimension mismatch");
  std::vector<double> d(n_);
  for (int i = 0; i < n_; ++i) d[i] = x[i] - center_[i];
  const double r = vec::norm(d);
  if (r == 0.0) return image_center_;
  if (r >= radius_ * (1.0 + 1e-12))
    throw OutOfDomainError("RadialMap::eval: point outside domain ball");
  const double scale = rho(std::min(r, radius_)) / r;
  std::vector<double> out(n_);
  for (int i = 0; i < n_; ++i) out[i] = image_center_[i] + scale * d[i];
  return out;
}

RadialMap build_truncated_map(const QProfile& Q, int m, int n) {
  if (m < 1) throw std::invalid_argument("build_truncated_map: m >= 1");
  if (n < 2) throw std::invalid_argument("build_truncated_map: n >= 2");
  if (1.0 / m <= kCacheFloorRadius)
    throw std::invalid_argument("build_truncated_map: truncation below cache floor");

  // Theorem hypotheses ask for Q >= 1; probe the spherical mean.
  for (int k = 0; k <= 48; ++k) {
    const double r = std::pow(10.0, -6.0 + 6.0 * k / 48.0) * 0.999;
    if (q_mean(Q, r) < 1.0 - 1e-9)
      throw std::invalid_argument("build_truncated_map: profile mean below 1");
  }

  const double exponent = 1.0 / (n - 1);
  const double inv_m = 1.0 / m;
  auto q_trunc = [&](double r) {
    return r > inv_m ? q_mean(Q, std::min(r, 0.999999999999)) : 1.0;
  };
  auto slope = [&](double u) {
    return std::pow(q_trunc(std::exp(-u)), -exponent);
  };

  RadialMap map;
  map.n_ = n;
  map.radius_ = 1.0;
  map.center_.assign(n, 0.0);
  map.image_center_.assign(n, 0.0);
  map.kink_ = m > 1 ? inv_m : 0.0;

  const double u_max = std::log(1.0 / kCacheFloorRadius);
  std::vector<double> grid;
  grid.reserve(kCacheIntervals + 2);
  for (int i = 0; i <= kCacheIntervals; ++i)
    grid.push_back(u_max * i / kCacheIntervals);
  if (m > 1) {
    const double u_kink = std::log(static_cast<double>(m));
    const auto it = std::lower_bound(grid.begin(), grid.end(), u_kink);
    if (it != grid.end() && std::abs(*it - u_kink) > 1e-12 &&
        (it == grid.begin() || std::abs(*(it - 1) - u_kink) > 1e-12))
      grid.insert(it, u_kink);
  }

  auto& cache = map.cache_;
  const std::size_t count = grid.size();
  cache.u = grid;
  cache.value.resize(count);
  cache.slope_left.resize(count - 1);
  cache.slope_right.resize(count - 1);
  const GaussLegendre& gl = gauss_legendre(8);
  cache.value[0] = 0.0;
  for (std::size_t i = 0; i + 1 < count; ++i) {
    const double a = cache.u[i], b = cache.u[i + 1];
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    double piece = 0.0;
    for (std::size_t k = 0; k < gl.nodes.size(); ++k)
      piece += gl.weights[k] * slope(mid + half * gl.nodes[k]);
    cache.value[i + 1] = cache.value[i] + half * piece;
    const double nudge = 1e-9 * (b - a);
    double sl = slope(a + nudge);
    double sr = slope(b - nudge);
    // Monotone-interpolation clamp; inert for smooth data.
    const double secant = (cache.value[i + 1] - cache.value[i]) / (b - a);
    sl = std::min(sl, 3.0 * secant);
    sr = std::min(sr, 3.0 * secant);
    cache.slope_left[i] = sl;
    cache.slope_right[i] = sr;
  }
  map.cached_ = true;
  return map;
}

double pushforward_ring_modulus(const QProfile& Q, double r1, double r2,
                                int n) {
  if (!(r1 > 0.0) || !(r1 < r2) || !(r2 < 1.0 + 1e-12))
    throw std::invalid_argument(
        "pushforward_ring_modulus: need 0 < r1 < r2 < 1");
  const double exponent = 1.0 / (n - 1);
  const double J = radial_integral(
      [&](double t) {
        const double q = q_mean(Q, t);
        if (q <= 0.0)
          throw DegenerateProfileError(
              "pushforward_ring_modulus: vanishing spherical mean");
        return 1.0 / (t * std::pow(q, exponent));
      },
      r1, r2);
  if (!(J > 0.0))
    throw DegenerateProfileError("pushforward_ring_modulus: zero exponent integral");
  return omega(n) / std::pow(J, n - 1);
}

RingQReport verify_ring_q_inequality(const RadialMap& f, const QProfile& Q,
                                     double r1, double r2, int eta_samples,
                                     std::uint64_t seed) {
  if (!(r1 > 0.0) || !(r1 < r2) || r2 > f.domain_radius() * (1 + 1e-12))
    throw std::invalid_argument("verify_ring_q_inequality: bad ring radii");
  if (eta_samples < 1)
    throw std::invalid_argument("verify_ring_q_inequality: eta_samples >= 1");
  const int n = f.dim();

  RingQReport report;
  report.lhs =
      omega(n) * std::pow(std::log(f.rho(r2) / f.rho(r1)), 1 - n);

  // Panel masses integral_{panel} Q dm; each random density is then a
  // weighted sum over the partition.
  constexpr int kPanels = 64;
  std::vector<double> edges(kPanels + 1), mass(kPanels);
  for (int p = 0; p <= kPanels; ++p)
    edges[p] = r1 + (r2 - r1) * p / kPanels;
  for (int p = 0; p < kPanels; ++p)
    mass[p] = annulus_integral(Q.evaluate, Q.center, edges[p], edges[p + 1],
                               Q.rule);

  const double viol_tol = 1e-6 * std::max(1.0, report.lhs);
  auto record = [&](double rhs) {
    const double slack = rhs - report.lhs;
    if (report.samples == 0)
      report.worst_slack = slack;
    else
      report.worst_slack = std::min(report.worst_slack, slack);
    if (slack < -viol_tol) ++report.violations;
    ++report.samples;
  };

  Rng rng(seed);
  std::vector<double> eta(kPanels);
  for (int sample = 0; sample < eta_samples; ++sample) {
    double total = 0.0;
    for (int p = 0; p < kPanels; ++p) {
      eta[p] = rng.exponential();
      total += eta[p] * (edges[p + 1] - edges[p]);
    }
    double rhs = 0.0;
    for (int p = 0; p < kPanels; ++p)
      rhs += std::pow(eta[p] / total, n) * mass[p];
    record(rhs);
  }

  // Classical extremal density 1/(t log(r2/r1)).
  const double logratio = std::log(r2 / r1);
  const auto center = Q.center;
  const auto field = Q.evaluate;
  const double rhs_extremal = annulus_integral(
      [&](std::span<const double> x) {
        std::vector<double> d(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - center[i];
        const double t = vec::norm(d);
        return field(x) * std::pow(1.0 / (t * logratio), n);
      },
      center, r1, r2, Q.rule);
  report.extremal_slack = rhs_extremal - report.lhs;
  record(rhs_extremal);
  return report;
}

double inner_dilatation_radial(const RadialMap& f, double r) {
  if (!(r > 0.0) || !(r < f.domain_radius()))
    throw std::invalid_argument("inner_dilatation_radial: r outside (0, R)");
  const double a = f.rho_prime(r);
  const double b = f.rho(r) / r;
  if (!(a > 0.0))
    throw std::invalid_argument(
        "inner_dilatation_radial: profile not increasing at r");
  const int n = f.dim();
  const double jac = a * std::pow(b, n - 1);
  const double l = std::min(a, b);
  return jac / std::pow(l, n);
}

MapFamily build_truncated_family(const QProfile& Q, int m_max, int n) {
  if (m_max < 1) throw std::invalid_argument("build_truncated_family: m_max >= 1");
  MapFamily family;
  family.n = n;
  for (int m = 1; m <= m_max; ++m) {
    family.members.push_back(build_truncated_map(Q, m, n));
    family.m_values.push_back(m);
  }
  return family;
}

EquicontinuityReport equicontinuity_experiment(const MapFamily& family,
                                               std::span<const double> radii) {
  EquicontinuityReport report;
  report.radii.assign(radii.begin(), radii.end());
  report.sup_h.assign(radii.size(), 0.0);
  const int n = family.n;
  std::vector<double> origin(n, 0.0);
  for (std::size_t mi = 0; mi < family.members.size(); ++mi) {
    const RadialMap& f = family.members[mi];
    const int m = family.m_values[mi];
    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
      const double r = radii[ri];
      if (!(r > 0.0) || r > f.domain_radius()) continue;
      const double image = f.rho(r);
      std::vector<double> fx(n, 0.0);
      fx[0] = image;
      const double h = chordal_distance(fx, origin);
      report.rows.push_back({m, r, h});
      report.sup_h[ri] = std::max(report.sup_h[ri], h);
    }
    report.rho_at_inv_m.push_back(f.rho(1.0 / m));
  }
  return report;
}

}  // namespace ringq
