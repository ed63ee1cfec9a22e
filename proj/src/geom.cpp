#include "ringq/geom.hpp"

#include <cmath>
#include <stdexcept>

namespace ringq {

ExtPoint ExtPoint::finite(std::vector<double> coords) {
  const int n = static_cast<int>(coords.size());
  if (n < 2) throw std::invalid_argument("ExtPoint: dimension must be >= 2");
  return ExtPoint(false, n, std::move(coords));
}

ExtPoint ExtPoint::infinity(int n) {
  if (n < 2) throw std::invalid_argument("ExtPoint: dimension must be >= 2");
  return ExtPoint(true, n, {});
}

const std::vector<double>& ExtPoint::coords() const {
  if (infinite_)
    throw std::invalid_argument("ExtPoint: infinity has no coordinates");
  return coords_;
}

double ExtPoint::norm() const {
  if (infinite_)
    throw std::invalid_argument("ExtPoint: infinity has no finite norm");
  return vec::norm(coords_);
}

bool ExtPoint::operator==(const ExtPoint& other) const {
  if (n_ != other.n_ || infinite_ != other.infinite_) return false;
  return infinite_ || coords_ == other.coords_;
}

namespace vec {

double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double dist(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace vec

double chordal_distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw std::invalid_argument("chordal_distance: dimension mismatch");
  const double nx = vec::norm(x);
  const double ny = vec::norm(y);
  return vec::dist(x, y) /
         (std::sqrt(1.0 + nx * nx) * std::sqrt(1.0 + ny * ny));
}

double chordal_distance(const ExtPoint& x, const ExtPoint& y) {
  if (x.dim() != y.dim())
    throw std::invalid_argument("chordal_distance: dimension mismatch");
  if (x.is_infinity() && y.is_infinity()) return 0.0;
  if (x.is_infinity() || y.is_infinity()) {
    const ExtPoint& finite = x.is_infinity() ? y : x;
    const double n = finite.norm();
    return 1.0 / std::sqrt(1.0 + n * n);
  }
  return chordal_distance(std::span<const double>(x.coords()),
                          std::span<const double>(y.coords()));
}

double chordal_diameter(std::span<const ExtPoint> points) {
  if (points.empty())
    throw std::invalid_argument("chordal_diameter: empty point set");
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      best = std::max(best, chordal_distance(points[i], points[j]));
  return best;
}

ExtPoint antipodal(const ExtPoint& x) {
  if (x.is_infinity()) {
    return ExtPoint::finite(std::vector<double>(x.dim(), 0.0));
  }
  const double n = x.norm();
  if (n == 0.0) return ExtPoint::infinity(x.dim());
  std::vector<double> out = x.coords();
  const double scale = -1.0 / (n * n);
  for (double& v : out) v *= scale;
  return ExtPoint::finite(std::move(out));
}

}  // namespace ringq
