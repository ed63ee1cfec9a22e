#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ringq/qprofile.hpp"

namespace ringq {

/// A radial stretch x -> x0 + ((x - x0)/|x - x0|) rho(|x - x0|) with a
/// strictly increasing profile rho. Profiles are either analytic or cached
/// cumulative integrals built from a dilatation profile (build_truncated_map).
/// Immutable after construction; evaluation is safe from concurrent callers.
class RadialMap {
 public:
  static RadialMap from_function(int n, std::function<double(double)> rho,
                                 double domain_radius = 1.0);
  static RadialMap identity(int n, double domain_radius = 1.0);

  int dim() const { return n_; }
  double domain_radius() const { return radius_; }
  /// Radius where the cached profile has a derivative kink (0 if none).
  double kink_radius() const { return kink_; }

  /// Profile value; defined on (0, domain_radius].
  double rho(double r) const;

  /// Numeric derivative of rho: central differences at relative step 1e-6,
  /// one-sided next to the cache kink.
  double rho_prime(double r) const;

  /// Map evaluation. |f(x) - f(x0)| = rho(|x - x0|), direction preserved.
  std::vector<double> eval(std::span<const double> x) const;

  const std::vector<double>& center() const { return center_; }
  const std::vector<double>& value_at_center() const { return image_center_; }

 private:
  friend RadialMap build_truncated_map(const QProfile&, int, int);
  RadialMap() = default;

  double cached_exponent_integral(double u) const;  // G at u = log(1/r)

  int n_ = 2;
  double radius_ = 1.0;
  std::vector<double> center_;
  std::vector<double> image_center_;
  std::function<double(double)> analytic_;
  double kink_ = 0.0;

  // Hermite data for G(u) = integral of q_m^{-1/(n-1)} over (0, u).
  struct Cache {
    std::vector<double> u;
    std::vector<double> value;
    std::vector<double> slope_left;   // G' entering each interval
    std::vector<double> slope_right;  // G' leaving each interval
  };
  Cache cache_;
  bool cached_ = false;
};

/// The truncated-profile radial map: q_{0,m}(r) = q(r) for r > 1/m and 1
/// below, rho_m(r) = exp(-integral_r^1 dt / (t q_{0,m}^{1/(n-1)}(t))).
/// Requires Q >= 1 on a probe grid of the unit ball.
RadialMap build_truncated_map(const QProfile& Q, int m, int n);

/// Exact modulus of the image of the ring curve family under the radial map
/// built from Q: omega_{n-1} / (integral_r1^r2 dt/(t q^{1/(n-1)}))^{n-1}.
double pushforward_ring_modulus(const QProfile& Q, double r1, double r2,
                                int n);

struct RingQReport {
  double lhs = 0.0;            // modulus of the image ring family
  double worst_slack = 0.0;    // min over densities of (rhs - lhs)
  double extremal_slack = 0.0; // slack at the classical extremal density
  int violations = 0;
  int samples = 0;
};

/// Tests the ring inequality against eta_samples random admissible
/// piecewise-constant densities plus the classical extremal density.
/// Violations are findings in the report, not errors.
RingQReport verify_ring_q_inequality(const RadialMap& f, const QProfile& Q,
                                     double r1, double r2, int eta_samples,
                                     std::uint64_t seed);

/// Inner dilatation of the radial map at radius r from the radial stretch
/// a = rho'(r) and the tangential stretch b = rho(r)/r: |J| / min(a,b)^n.
double inner_dilatation_radial(const RadialMap& f, double r);

struct MapFamily {
  std::vector<RadialMap> members;
  std::vector<int> m_values;
  int n = 2;
};

/// Members build_truncated_map(Q, m, n) for m = 1..m_max.
MapFamily build_truncated_family(const QProfile& Q, int m_max, int n);

struct EquicontinuityRow {
  int m = 0;
  double r = 0.0;
  double h = 0.0;  // chordal distance h(f_m(r e1), f_m(0))
};

struct EquicontinuityReport {
  std::vector<EquicontinuityRow> rows;
  std::vector<double> radii;
  std::vector<double> sup_h;          // per radius, over the family
  std::vector<double> rho_at_inv_m;   // |f_m(1/m)| per member
};

/// Tabulates h(f_m(x), f_m(0)) across members and radii, with the
/// per-member values |f_m(1/m)| that witness non-equicontinuity.
EquicontinuityReport equicontinuity_experiment(const MapFamily& family,
                                               std::span<const double> radii);

}  // namespace ringq
