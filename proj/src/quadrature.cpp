#include "ringq/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "ringq/rng.hpp"

namespace ringq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kPanelOrder = 8;

void check_dim(int n) {
  if (n < 2) throw std::invalid_argument("dimension must be >= 2");
}

}  // namespace

QuadratureRule QuadratureRule::for_dim(int n) {
  QuadratureRule rule;
  rule.n = n;
  return rule;
}

int QuadratureRule::effective_sphere_samples() const {
  if (sphere_samples > 0) return sphere_samples;
  if (n == 2) return 256;
  if (n == 3) return 512;
  return 1024;
}

void QuadratureRule::validate() const {
  check_dim(n);
  if (radial_points < 8)
    throw std::invalid_argument("QuadratureRule: radial_points must be >= 8");
  if (effective_sphere_samples() < 64)
    throw std::invalid_argument("QuadratureRule: sphere_samples must be >= 64");
}

double omega(int n) {
  check_dim(n);
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double ball_volume(int n) {
  check_dim(n);
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

const GaussLegendre& gauss_legendre(int order) {
  static std::mutex mutex;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  // Newton iteration on Legendre polynomials; nodes symmetrized in pairs.
  GaussLegendre rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[order - 1 - i] = x;
    rule.weights[order - 1 - i] = w;
  }
  return cache.emplace(order, std::move(rule)).first->second;
}

double radial_integral(const std::function<double(double)>& g, double a,
                       double b, int panels) {
  if (!(a > 0.0) || !(a < b))
    throw std::invalid_argument("radial_integral: need 0 < a < b");
  if (panels < 1) panels = 1;
  // u = log(1/t): integral of g(e^{-u}) e^{-u} du over [log(1/b), log(1/a)].
  const double u_lo = std::log(1.0 / b);
  const double u_hi = std::log(1.0 / a);
  const double du = (u_hi - u_lo) / panels;
  const GaussLegendre& gl = gauss_legendre(kPanelOrder);
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double c = u_lo + (p + 0.5) * du;
    double panel = 0.0;
    for (int k = 0; k < kPanelOrder; ++k) {
      const double u = c + 0.5 * du * gl.nodes[k];
      const double t = std::exp(-u);
      panel += gl.weights[k] * g(t) * t;
    }
    total += 0.5 * du * panel;
  }
  return total;
}

namespace {

// First-quadrant angles reflected through all sign combinations so the set
// is exactly symmetric under each coordinate flip.
SphereNodes make_nodes_2d(int samples) {
  int quarter = (samples + 3) / 4;
  SphereNodes nodes;
  nodes.n = 2;
  nodes.points.reserve(static_cast<std::size_t>(quarter) * 8);
  for (int k = 0; k < quarter; ++k) {
    const double theta = (kPi / 2.0) * (k + 0.5) / quarter;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (int sc : {1, -1})
      for (int ss : {1, -1}) {
        nodes.points.push_back(sc * c);
        nodes.points.push_back(ss * s);
      }
  }
  return nodes;
}

SphereNodes make_nodes_3d(int samples) {
  int base = (samples + 7) / 8;
  SphereNodes nodes;
  nodes.n = 3;
  nodes.points.reserve(static_cast<std::size_t>(base) * 24);
  // Fibonacci spiral folded into the positive octant, then reflected.
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  for (int k = 0; k < base; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / (2.0 * base);
    const double rxy = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = 2.0 * kPi * k / golden;
    double p[3] = {std::abs(rxy * std::cos(phi)), std::abs(rxy * std::sin(phi)),
                   std::abs(z)};
    for (int sx : {1, -1})
      for (int sy : {1, -1})
        for (int sz : {1, -1}) {
          nodes.points.push_back(sx * p[0]);
          nodes.points.push_back(sy * p[1]);
          nodes.points.push_back(sz * p[2]);
        }
  }
  return nodes;
}

SphereNodes make_nodes_qmc(int n, int samples, std::uint64_t seed) {
  const int orbit = 1 << n;
  int base = (samples + orbit - 1) / orbit;
  SphereNodes nodes;
  nodes.n = n;
  nodes.points.reserve(static_cast<std::size_t>(base) * orbit * n);
  Rng rng(seed);
  std::vector<double> dir(n);
  for (int k = 0; k < base; ++k) {
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (int d = 0; d < n; ++d) {
        dir[d] = std::abs(rng.normal());
        norm2 += dir[d] * dir[d];
      }
    } while (norm2 < 1e-12);
    const double inv = 1.0 / std::sqrt(norm2);
    for (int mask = 0; mask < orbit; ++mask)
      for (int d = 0; d < n; ++d)
        nodes.points.push_back(((mask >> d) & 1 ? -1.0 : 1.0) * dir[d] * inv);
  }
  return nodes;
}

}  // namespace

const SphereNodes& sphere_nodes(int n, int samples, std::uint64_t seed) {
  check_dim(n);
  static std::mutex mutex;
  static std::map<std::tuple<int, int, std::uint64_t>, SphereNodes> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_tuple(n, samples, seed);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  SphereNodes nodes = n == 2   ? make_nodes_2d(samples)
                      : n == 3 ? make_nodes_3d(samples)
                               : make_nodes_qmc(n, samples, seed);
  return cache.emplace(key, std::move(nodes)).first->second;
}

double sphere_integral(const ScalarField& f, std::span<const double> x0,
                       double r, const QuadratureRule& rule) {
  rule.validate();
  const int n = static_cast<int>(x0.size());
  if (n != rule.n)
    throw std::invalid_argument("sphere_integral: rule/point dimension mismatch");
  if (!(r > 0.0)) throw std::invalid_argument("sphere_integral: need r > 0");

  const SphereNodes& nodes =
      sphere_nodes(n, rule.effective_sphere_samples(), rule.seed);
  std::vector<double> x(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.count(); ++i) {
    const auto dir = nodes.point(i);
    for (int d = 0; d < n; ++d) x[d] = x0[d] + r * dir[d];
    sum += f(x);
  }
  const double area = omega(n) * std::pow(r, n - 1);
  return area * sum / static_cast<double>(nodes.count());
}

double annulus_integral(const ScalarField& F, std::span<const double> x0,
                        double eps, double eps0, const QuadratureRule& rule) {
  rule.validate();
  if (!(eps > 0.0) || !(eps < eps0))
    throw std::invalid_argument("annulus_integral: need 0 < eps < eps0");
  // Co-area: integrate the spherical slice integral over the radius.
  return radial_integral(
      [&](double t) { return sphere_integral(F, x0, t, rule); }, eps, eps0,
      rule.radial_points);
}

}  // namespace ringq
