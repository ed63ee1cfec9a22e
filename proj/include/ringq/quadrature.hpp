#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace ringq {

using ScalarField = std::function<double(std::span<const double>)>;

/// Deterministic quadrature configuration. radial_points counts composite
/// Gauss-Legendre panels (8 nodes each) laid out in log-radius; the panel
/// layout makes integrable endpoint singularities like 1/(t log(1/t))
/// resolvable without ever touching t = 0.
struct QuadratureRule {
  int radial_points = 32;
  int sphere_samples = 0;  // 0 picks the per-dimension default
  int n = 2;
  std::uint64_t seed = 0x5eed5eedULL;  // direction seed for n >= 4

  static QuadratureRule for_dim(int n);
  void validate() const;
  int effective_sphere_samples() const;
};

/// Surface area of the unit sphere S^{n-1} in n-space: 2 pi^{n/2} / Gamma(n/2).
double omega(int n);

/// Volume of the unit ball in n-space: pi^{n/2} / Gamma(n/2 + 1).
double ball_volume(int n);

/// Nodes and weights of the q-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int order);

/// Integral of g over (a, b), 0 < a < b, by composite Gauss-Legendre in the
/// variable u = log(1/t). Spectrally accurate for integrands smooth in u.
double radial_integral(const std::function<double(double)>& g, double a,
                       double b, int panels = 32);

/// Equal-weight unit-sphere node set, symmetric under every coordinate sign
/// flip so that fields odd in any single coordinate integrate to exactly 0.
struct SphereNodes {
  int n = 0;
  std::vector<double> points;  // flattened, size() == count * n
  std::size_t count() const { return points.size() / n; }
  std::span<const double> point(std::size_t i) const {
    return {points.data() + i * n, static_cast<std::size_t>(n)};
  }
};
const SphereNodes& sphere_nodes(int n, int samples, std::uint64_t seed);

/// Surface integral of f over the sphere |x - x0| = r.
double sphere_integral(const ScalarField& f, std::span<const double> x0,
                       double r, const QuadratureRule& rule);

/// Volume integral of F over the annulus eps < |x - x0| < eps0, computed as
/// nested radial x spherical quadrature.
double annulus_integral(const ScalarField& F, std::span<const double> x0,
                        double eps, double eps0, const QuadratureRule& rule);

}  // namespace ringq
