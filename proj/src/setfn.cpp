#include "ringq/setfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ringq/quadrature.hpp"

namespace ringq {

namespace {

// Stereographic projection onto the sphere of radius 1/2 centered at
// (0,...,0,1/2) in R^{n+1}; the chordal metric is the Euclidean metric of
// the image.
std::vector<double> project(const ExtPoint& y) {
  const int n = y.dim();
  std::vector<double> p(n + 1, 0.0);
  if (y.is_infinity()) {
    p[n] = 1.0;
    return p;
  }
  const auto& c = y.coords();
  double norm2 = 0.0;
  for (double v : c) norm2 += v * v;
  const double denom = 1.0 + norm2;
  for (int i = 0; i < n; ++i) p[i] = c[i] / denom;
  p[n] = norm2 / denom;
  return p;
}

ExtPoint unproject(std::span<const double> p, int n) {
  const double s = p[n];
  if (1.0 - s < 1e-14) return ExtPoint::infinity(n);
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) y[i] = p[i] / (1.0 - s);
  return ExtPoint::finite(std::move(y));
}

}  // namespace

ChordalChart ChordalChart::centered_at(const ExtPoint& x) {
  const int n = x.dim();
  const int d = n + 1;
  // Unit vectors from the sphere center to the images of x and of 0.
  std::vector<double> a = project(x);
  a[n] -= 0.5;
  for (double& v : a) v *= 2.0;
  std::vector<double> b(d, 0.0);
  b[n] = -1.0;

  std::vector<double> rot(static_cast<std::size_t>(d) * d, 0.0);
  double ab = 0.0;
  for (int i = 0; i < d; ++i) ab += a[i] * b[i];
  if (1.0 + ab < 1e-12) {
    // x is the point at infinity: flip the first and last axes.
    for (int i = 0; i < d; ++i) rot[i * d + i] = 1.0;
    rot[0] = -1.0;
    rot[(d - 1) * d + (d - 1)] = -1.0;
  } else {
    // Rotation in span{a, b} taking a to b, identity on the complement.
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        rot[i * d + j] = (i == j ? 1.0 : 0.0) + 2.0 * b[i] * a[j] -
                         (a[i] + b[i]) * (a[j] + b[j]) / (1.0 + ab);
  }
  return ChordalChart(n, std::move(rot));
}

ExtPoint ChordalChart::apply(const ExtPoint& y, bool inverse) const {
  const int d = n_ + 1;
  std::vector<double> p = project(y);
  p[n_] -= 0.5;
  std::vector<double> q(d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      q[i] += (inverse ? rotation_[j * d + i] : rotation_[i * d + j]) * p[j];
  q[n_] += 0.5;
  return unproject(q, n_);
}

ExtPoint ChordalChart::to_chart(const ExtPoint& y) const {
  return apply(y, false);
}

ExtPoint ChordalChart::from_chart(const ExtPoint& y_chart) const {
  return apply(y_chart, true);
}

double ChordalChart::scale_from_chart(std::span<const double> y_chart) const {
  std::vector<double> yc(y_chart.begin(), y_chart.end());
  const ExtPoint pre = from_chart(ExtPoint::finite(yc));
  if (pre.is_infinity()) return std::numeric_limits<double>::infinity();
  const double npre = pre.norm();
  double nc = 0.0;
  for (double v : y_chart) nc += v * v;
  return (1.0 + npre * npre) / (1.0 + nc);
}

double chart_radius(double t) {
  if (!(t > 0.0) || !(t < 1.0))
    throw std::invalid_argument("chart_radius: t in (0, 1)");
  return t / std::sqrt(1.0 - t * t);
}

double m_t_modulus(const CompactSet& E, double r, const ExtPoint& x, double t,
                   double tol, const SetFnOptions& options) {
  if (!(r > 0.0) || !(r < t) || !(t < 1.0))
    throw std::invalid_argument("m_t_modulus: need 0 < r < t < 1");
  if (E.empty()) return 0.0;
  const int n = E.n;
  if (x.dim() != n) throw std::invalid_argument("m_t_modulus: dim mismatch");

  const ChordalChart chart = ChordalChart::centered_at(x);
  const double Rt = chart_radius(t);
  const double Rr = chart_radius(r);
  const int res =
      options.resolution > 0 ? options.resolution : (n == 2 ? 128 : 48);
  const double thin_factor = 0.5 * std::sqrt(static_cast<double>(n));

  // Thin primitives rasterize through chart-space witness samples: the
  // primitives are sampled in the original space, filtered to the closed
  // chordal r-ball about x, and mapped through the chart once. Membership
  // is then a plain distance threshold in exact chart coordinates.
  std::vector<std::vector<double>> thin_witnesses;
  std::vector<double> witness_tol;
  std::vector<const CompactPrimitive*> volumetric;
  const double h_grid = 2.0 * Rt / (res - 1);
  {
    auto add_witness = [&](const std::vector<double>& p) {
      const ExtPoint original = ExtPoint::finite(p);
      if (chordal_distance(original, x) > r * (1.0 + 1e-12)) return;
      const ExtPoint image = chart.to_chart(original);
      if (image.is_infinity()) return;
      // Every witness captures at least its nearest grid node, so point
      // plates never vanish on alignment accidents.
      double near2 = 0.0;
      for (double v : image.coords()) {
        const double steps = (v + Rt) / h_grid;
        const double frac = steps - std::round(steps);
        near2 += frac * frac * h_grid * h_grid;
      }
      witness_tol.push_back(std::max(thin_factor * h_grid * (1.0 + 1e-9),
                                     std::sqrt(near2) + 1e-12));
      thin_witnesses.push_back(image.coords());
    };
    for (const auto& prim : E.parts) {
      if (!is_thin(prim)) {
        volumetric.push_back(&prim);
        continue;
      }
      if (std::holds_alternative<PointsDesc>(prim)) {
        for (const auto& p : std::get<PointsDesc>(prim).points)
          add_witness(p);
      } else {
        const auto& seg = std::get<SegmentDesc>(prim);
        const int samples = 4 * res;
        for (int s = 0; s <= samples; ++s) {
          std::vector<double> p(seg.a.size());
          const double t01 = static_cast<double>(s) / samples;
          for (std::size_t i = 0; i < p.size(); ++i)
            p[i] = seg.a[i] + t01 * (seg.b[i] - seg.a[i]);
          add_witness(p);
        }
      }
    }
  }

  // Volumetric primitives pull nodes back to the original coordinates;
  // nearby distances convert through the local conformal factor and far
  // membership is decided by exact chordal distances to witnesses.
  auto plate_clearance = [&](std::span<const double> yc, double h) {
    (void)h;
    double nc2 = 0.0;
    for (double v : yc) nc2 += v * v;
    const double nc = std::sqrt(nc2);
    double clearance = std::numeric_limits<double>::infinity();
    for (std::size_t w = 0; w < thin_witnesses.size(); ++w) {
      const auto& witness = thin_witnesses[w];
      double d2 = 0.0;
      for (std::size_t i = 0; i < witness.size(); ++i) {
        const double d = witness[i] - yc[i];
        d2 += d * d;
      }
      clearance = std::min(clearance, std::sqrt(d2) - witness_tol[w]);
    }
    if (!volumetric.empty()) {
      const double ball_part = nc - Rr;
      std::vector<double> coords(yc.begin(), yc.end());
      const ExtPoint pre = chart.from_chart(ExtPoint::finite(coords));
      if (!pre.is_infinity()) {
        const double chordal_to_chart = 1.0 + nc2;
        const double pre_norm = pre.norm();
        for (const CompactPrimitive* prim : volumetric) {
          double cl;
          if (distance_to(*prim, pre.coords()) <= 0.0) {
            const double scale =
                (1.0 + pre_norm * pre_norm) / chordal_to_chart;
            cl = signed_clearance(CompactSet{{*prim}, n}, pre.coords(), 0.0) /
                 scale;
          } else {
            const auto witness = nearest_point(*prim, pre.coords());
            const double hd = chordal_distance(
                std::span<const double>(pre.coords()), witness);
            cl = hd * chordal_to_chart;
          }
          clearance = std::min(clearance, std::max(ball_part, cl));
        }
      }
    }
    return clearance;
  };

  NodeClassifier classify = [&, Rt](std::span<const double> pos, double h) {
    NodeInfo info;
    double norm2 = 0.0;
    for (double v : pos) norm2 += v * v;
    const double nc = std::sqrt(norm2);
    info.clearance_zero = Rt - nc;
    info.clearance_one = plate_clearance(pos, h);
    if (info.clearance_zero <= 0.0)
      info.state = NodeState::kPlateZero;
    else if (info.clearance_one <= 0.0)
      info.state = NodeState::kPlateOne;
    return info;
  };

  // Empty intersection (or a set below grid resolution) carries no curves.
  {
    const double h = 2.0 * Rt / (res - 1);
    bool any = false;
    for (int i = 0; i < res && !any; ++i)
      for (int j = 0; j < res && !any; ++j) {
        if (n == 2) {
          const double pos[2] = {-Rt + i * h, -Rt + j * h};
          any = classify(std::span<const double>(pos, 2), h).state ==
                NodeState::kPlateOne;
        } else {
          for (int k = 0; k < res && !any; ++k) {
            const double pos[3] = {-Rt + i * h, -Rt + j * h, -Rt + k * h};
            any = classify(std::span<const double>(pos, 3), h).state ==
                  NodeState::kPlateOne;
          }
        }
      }
    if (!any) return 0.0;
  }

  SolveOptions solver = options.solver;
  solver.tol = tol > 0.0 ? tol : solver.tol;
  return solve_capacity_cube(n, -Rt, Rt, res, classify, solver).value;
}

double m_standard(const CompactSet& E, const ExtPoint& x, double tol,
                  const SetFnOptions& options) {
  return m_t_modulus(E, std::sqrt(2.0) / 2.0, x, std::sqrt(3.0) / 2.0, tol,
                     options);
}

std::vector<ExtPoint> default_x_grid(int n) {
  std::vector<ExtPoint> grid;
  grid.push_back(ExtPoint::finite(std::vector<double>(n, 0.0)));
  grid.push_back(ExtPoint::infinity(n));
  if (n == 2) {
    for (double radius : {0.5, 1.0, 2.0})
      for (int k = 0; k < 8; ++k) {
        const double th = 2.0 * std::numbers::pi * k / 8.0;
        grid.push_back(ExtPoint::finite(
            {radius * std::cos(th), radius * std::sin(th)}));
      }
  } else {
    // Sign-vector directions {-1,0,1}^n \ {0} on the unit sphere.
    std::vector<int> digits(n, 0);
    const int total = static_cast<int>(std::pow(3.0, n));
    for (int code = 0; code < total; ++code) {
      int c = code;
      double norm2 = 0.0;
      std::vector<double> v(n);
      for (int d = 0; d < n; ++d) {
        v[d] = static_cast<double>(c % 3 - 1);
        norm2 += v[d] * v[d];
        c /= 3;
      }
      if (norm2 == 0.0) continue;
      const double inv = 1.0 / std::sqrt(norm2);
      for (double& vi : v) vi *= inv;
      grid.push_back(ExtPoint::finite(std::move(v)));
    }
  }
  return grid;
}

CSetResult c_set(const CompactSet& E, std::span<const ExtPoint> x_grid,
                 double tol, const SetFnOptions& options) {
  if (x_grid.empty()) throw std::invalid_argument("c_set: empty search grid");
  CSetResult result;
  result.c_value = std::numeric_limits<double>::infinity();

  auto c_at = [&](const ExtPoint& x) {
    const double m1 = m_standard(E, x, tol, options);
    const double m2 = m_standard(E, antipodal(x), tol, options);
    return std::max(m1, m2);
  };

  std::vector<ExtPoint> candidates(x_grid.begin(), x_grid.end());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double value = c_at(candidates[i]);
    result.values.push_back(value);
    if (value < result.c_value) {
      result.c_value = value;
      result.argmin_x = candidates[i];
    }
  }

  // Local refinement around the best finite candidate: radius rescalings.
  for (int round = 0; round < options.refine_rounds; ++round) {
    const ExtPoint best = result.argmin_x;
    if (best.is_infinity() || best.norm() == 0.0) break;
    bool improved = false;
    for (double s : {0.7, 1.4}) {
      std::vector<double> v = best.coords();
      for (double& vi : v) vi *= s;
      const ExtPoint candidate = ExtPoint::finite(std::move(v));
      const double value = c_at(candidate);
      result.values.push_back(value);
      if (value < result.c_value) {
        result.c_value = value;
        result.argmin_x = candidate;
        improved = true;
      }
    }
    if (!improved) break;
  }
  return result;
}

SetBoundChain set_function_lower_bound(double c_fC, double c_Ef, double beta_vu,
                               double a_vu, int n) {
  if (!(beta_vu > 0.0) || !(a_vu > 0.0))
    throw std::invalid_argument("set_function_lower_bound: constants must be positive");
  if (c_fC < 0.0 || c_Ef < 0.0)
    throw std::invalid_argument("set_function_lower_bound: inputs must be >= 0");
  SetBoundChain out;
  out.min_branch_is_fC = c_fC <= c_Ef;
  out.min_form = beta_vu * std::min(c_fC, c_Ef);
  const double cap = omega(n) * std::pow(std::log(std::sqrt(3.0)), 1 - n);
  out.c_n = std::min(beta_vu, beta_vu * a_vu / cap);
  out.h_derived = c_fC / a_vu;
  out.diameter_form = out.c_n * out.h_derived * c_Ef;
  return out;
}

double displacement_estimate(double alpha_eps, double c_n,
                                      double delta) {
  if (!(c_n > 0.0) || !(delta > 0.0))
    throw std::invalid_argument(
        "displacement_estimate: c_n, delta > 0");
  if (alpha_eps < 0.0)
    throw std::invalid_argument("displacement_estimate: alpha >= 0");
  return alpha_eps / (c_n * delta);
}

}  // namespace ringq
