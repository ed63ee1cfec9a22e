#pragma once

#include <vector>

#include "ringq/geom.hpp"
#include "ringq/modulus.hpp"
#include "ringq/shapes.hpp"

namespace ringq {

/// Rotation of the chordal sphere taking a given point to the origin of
/// stereographic coordinates. Rotations preserve the chordal metric, so
/// chordal balls about the point become Euclidean balls about 0 in the
/// chart, and the conformal modulus is unchanged.
class ChordalChart {
 public:
  static ChordalChart centered_at(const ExtPoint& x);

  /// Chart image of a point (finite result for h(x, y) < 1).
  ExtPoint to_chart(const ExtPoint& y) const;
  ExtPoint from_chart(const ExtPoint& y_chart) const;

  /// Conformal scale |dy/dy'| of the inverse map at a chart point:
  /// (1 + |y|^2) / (1 + |y'|^2).
  double scale_from_chart(std::span<const double> y_chart) const;

  int dim() const { return n_; }

 private:
  ChordalChart(int n, std::vector<double> rotation)
      : n_(n), rotation_(std::move(rotation)) {}
  ExtPoint apply(const ExtPoint& y, bool inverse) const;

  int n_ = 0;
  std::vector<double> rotation_;  // (n+1) x (n+1), row-major
};

/// Euclidean radius of the chart image of a chordal ball of radius t < 1.
double chart_radius(double t);

struct SetFnOptions {
  int resolution = 0;  // 0 picks 128 for n = 2, 48 for n = 3
  int refine_rounds = 1;
  SolveOptions solver;
};

/// m_t(E, r, x): modulus of the curves joining the boundary of the chordal
/// ball B*(x, t) with E intersected with the closed ball B*(x, r), solved
/// on a grid in the chart centered at x. Returns 0 when the intersection
/// resolves to nothing.
double m_t_modulus(const CompactSet& E, double r, const ExtPoint& x, double t,
                   double tol, const SetFnOptions& options = {});

/// m(E, x) = m_{sqrt(3)/2}(E, sqrt(2)/2, x).
double m_standard(const CompactSet& E, const ExtPoint& x, double tol,
                  const SetFnOptions& options = {});

struct CSetResult {
  double c_value = 0.0;
  ExtPoint argmin_x;
  std::vector<double> values;  // c(E, x) per searched grid point

  CSetResult() : argmin_x(ExtPoint::infinity(2)) {}
};

/// c(E) approximated as the min over the search grid of
/// max{m(E, x), m(E, antipodal(x))}; an upper approximation of the true
/// infimum. Ties break to the lowest grid index.
CSetResult c_set(const CompactSet& E, std::span<const ExtPoint> x_grid,
                 double tol, const SetFnOptions& options = {});

/// Default search set: origin, infinity, and a modest sphere design.
std::vector<ExtPoint> default_x_grid(int n);

struct SetBoundChain {
  double min_form = 0.0;  // beta_vu * min(c_fC, c_Ef)
  double diameter_form = 0.0;  // c_n * h * c_Ef with h = c_fC / a_vu
  double c_n = 0.0;
  double h_derived = 0.0;
  bool min_branch_is_fC = false;
};

/// Lower-bound chain through the cited set-function constants; beta_vu and
/// a_vu are configuration, so every output is up to those constants.
SetBoundChain set_function_lower_bound(double c_fC, double c_Ef, double beta_vu,
                               double a_vu, int n);

/// h(f(C)) upper estimate alpha(eps) / (c_n delta).
double displacement_estimate(double alpha_eps, double c_n,
                                      double delta);

}  // namespace ringq
