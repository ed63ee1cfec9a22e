#pragma once

#include <span>
#include <vector>

namespace ringq {

/// A point of compactified n-space: finite coordinates or the point at
/// infinity. The chordal metric below identifies this with a sphere of
/// diameter 1, so all distances land in [0, 1].
class ExtPoint {
 public:
  static ExtPoint finite(std::vector<double> coords);
  static ExtPoint infinity(int n);

  bool is_infinity() const { return infinite_; }
  int dim() const { return n_; }

  /// Coordinates of a finite point; throws for the point at infinity.
  const std::vector<double>& coords() const;

  /// Euclidean norm of a finite point; throws for infinity.
  double norm() const;

  bool operator==(const ExtPoint& other) const;

 private:
  ExtPoint(bool infinite, int n, std::vector<double> coords)
      : infinite_(infinite), n_(n), coords_(std::move(coords)) {}

  bool infinite_ = false;
  int n_ = 0;
  std::vector<double> coords_;
};

/// Chordal (spherical) distance h(x, y) on compactified n-space:
/// |x-y| / (sqrt(1+|x|^2) sqrt(1+|y|^2)) for finite points,
/// 1 / sqrt(1+|x|^2) when the other point is infinity.
double chordal_distance(const ExtPoint& x, const ExtPoint& y);

/// Chordal distance from a finite point given as raw coordinates.
double chordal_distance(std::span<const double> x, std::span<const double> y);

/// Max pairwise chordal distance; 0 for a singleton, error for empty input.
double chordal_diameter(std::span<const ExtPoint> points);

/// The involution x -> -x / |x|^2, with 0 <-> infinity.
ExtPoint antipodal(const ExtPoint& x);

namespace vec {

double norm(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
double dist(std::span<const double> x, std::span<const double> y);

}  // namespace vec

}  // namespace ringq
