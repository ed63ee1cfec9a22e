#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ringq {

// Compact-set primitives. A CompactSet is a finite union of these; thin
// primitives (points, segments) are thickened by half a grid cell when
// rasterized onto a solver grid.

struct PointsDesc {
  std::vector<std::vector<double>> points;
};

struct BallDesc {
  std::vector<double> center;
  double radius = 0.0;
};

struct SegmentDesc {
  std::vector<double> a;
  std::vector<double> b;
};

struct BoxDesc {
  std::vector<double> lo;
  std::vector<double> hi;
};

/// Everything at or beyond the given radius: {x : |x - c| >= r}. Compact in
/// compactified space; serves as the outer plate of ring configurations.
struct ShellDesc {
  std::vector<double> center;
  double radius = 0.0;
};

using CompactPrimitive =
    std::variant<PointsDesc, BallDesc, SegmentDesc, BoxDesc, ShellDesc>;

struct CompactSet {
  std::vector<CompactPrimitive> parts;
  int n = 0;

  bool empty() const { return parts.empty(); }
};

CompactSet make_point_set(std::vector<std::vector<double>> points);
CompactSet make_ball_set(std::vector<double> center, double radius);
CompactSet make_segment_set(std::vector<double> a, std::vector<double> b);
CompactSet make_shell_set(std::vector<double> center, double radius);

/// Euclidean distance from x to the primitive (0 inside).
double distance_to(const CompactPrimitive& prim, std::span<const double> x);
double distance_to(const CompactSet& set, std::span<const double> x);

/// Euclidean-nearest point of the primitive to x (x itself when inside).
std::vector<double> nearest_point(const CompactPrimitive& prim,
                                  std::span<const double> x);

/// True for primitives of zero n-volume that need grid thickening.
bool is_thin(const CompactPrimitive& prim);

/// Signed clearance to the rasterized set: volumetric primitives use the
/// signed Euclidean distance (negative inside), thin primitives the
/// unsigned distance minus thin_tol. Membership is clearance <= 0.
double signed_clearance(const CompactSet& set, std::span<const double> x,
                        double thin_tol);

bool contains(const CompactSet& set, std::span<const double> x,
              double thin_tol);

/// Text format, one primitive per line:
///   point x1 .. xn
///   ball c1 .. cn r
///   segment a1 .. an b1 .. bn
///   box lo1 .. lon hi1 .. hin
CompactSet parse_compact_set(std::istream& in, int n);
CompactSet parse_compact_set(const std::string& text, int n);

// Region descriptors for the open set of a condenser.

struct RegionBall {
  std::vector<double> center;
  double radius = 0.0;
};

struct RegionBox {
  std::vector<double> lo;
  std::vector<double> hi;
};

using Region = std::variant<RegionBall, RegionBox>;

bool region_contains(const Region& region, std::span<const double> x);

/// Signed distance into the region: positive inside, negative outside.
double region_clearance(const Region& region, std::span<const double> x);

/// Smallest cube [lo, hi]^n covering the region, as (lo, hi).
std::pair<double, double> region_cube(const Region& region, int n);

}  // namespace ringq
