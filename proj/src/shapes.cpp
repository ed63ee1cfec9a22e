#include "ringq/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ringq/geom.hpp"

namespace ringq {

namespace {

int primitive_dim(const CompactPrimitive& prim) {
  return std::visit(
      [](const auto& p) -> int {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PointsDesc>)
          return p.points.empty() ? 0 : static_cast<int>(p.points[0].size());
        else if constexpr (std::is_same_v<T, BallDesc>)
          return static_cast<int>(p.center.size());
        else if constexpr (std::is_same_v<T, SegmentDesc>)
          return static_cast<int>(p.a.size());
        else if constexpr (std::is_same_v<T, ShellDesc>)
          return static_cast<int>(p.center.size());
        else
          return static_cast<int>(p.lo.size());
      },
      prim);
}

double segment_distance(const SegmentDesc& seg, std::span<const double> x) {
  const std::size_t n = seg.a.size();
  double dir2 = 0.0, proj = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = seg.b[i] - seg.a[i];
    dir2 += d * d;
    proj += d * (x[i] - seg.a[i]);
  }
  const double t = dir2 > 0.0 ? std::clamp(proj / dir2, 0.0, 1.0) : 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = seg.a[i] + t * (seg.b[i] - seg.a[i]);
    const double d = x[i] - c;
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

CompactSet make_point_set(std::vector<std::vector<double>> points) {
  if (points.empty())
    throw std::invalid_argument("make_point_set: empty point list");
  CompactSet set;
  set.n = static_cast<int>(points[0].size());
  set.parts.push_back(PointsDesc{std::move(points)});
  return set;
}

CompactSet make_ball_set(std::vector<double> center, double radius) {
  if (!(radius > 0.0))
    throw std::invalid_argument("make_ball_set: radius must be positive");
  CompactSet set;
  set.n = static_cast<int>(center.size());
  set.parts.push_back(BallDesc{std::move(center), radius});
  return set;
}

CompactSet make_segment_set(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("make_segment_set: endpoint dim mismatch");
  CompactSet set;
  set.n = static_cast<int>(a.size());
  set.parts.push_back(SegmentDesc{std::move(a), std::move(b)});
  return set;
}

CompactSet make_shell_set(std::vector<double> center, double radius) {
  if (!(radius > 0.0))
    throw std::invalid_argument("make_shell_set: radius must be positive");
  CompactSet set;
  set.n = static_cast<int>(center.size());
  set.parts.push_back(ShellDesc{std::move(center), radius});
  return set;
}

double distance_to(const CompactPrimitive& prim, std::span<const double> x) {
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PointsDesc>) {
          double best = std::numeric_limits<double>::infinity();
          for (const auto& pt : p.points)
            best = std::min(best, vec::dist(pt, x));
          return best;
        } else if constexpr (std::is_same_v<T, BallDesc>) {
          return std::max(0.0, vec::dist(p.center, x) - p.radius);
        } else if constexpr (std::is_same_v<T, SegmentDesc>) {
          return segment_distance(p, x);
        } else if constexpr (std::is_same_v<T, ShellDesc>) {
          return std::max(0.0, p.radius - vec::dist(p.center, x));
        } else {
          double s = 0.0;
          for (std::size_t i = 0; i < p.lo.size(); ++i) {
            const double d =
                std::max({p.lo[i] - x[i], x[i] - p.hi[i], 0.0});
            s += d * d;
          }
          return std::sqrt(s);
        }
      },
      prim);
}

double distance_to(const CompactSet& set, std::span<const double> x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& prim : set.parts)
    best = std::min(best, distance_to(prim, x));
  return best;
}

std::vector<double> nearest_point(const CompactPrimitive& prim,
                                  std::span<const double> x) {
  return std::visit(
      [&](const auto& p) -> std::vector<double> {
        using T = std::decay_t<decltype(p)>;
        std::vector<double> out(x.begin(), x.end());
        if constexpr (std::is_same_v<T, PointsDesc>) {
          double best = std::numeric_limits<double>::infinity();
          for (const auto& pt : p.points) {
            const double d = vec::dist(pt, x);
            if (d < best) {
              best = d;
              out = pt;
            }
          }
        } else if constexpr (std::is_same_v<T, BallDesc>) {
          const double d = vec::dist(p.center, x);
          if (d > p.radius) {
            const double s = p.radius / d;
            for (std::size_t i = 0; i < out.size(); ++i)
              out[i] = p.center[i] + s * (x[i] - p.center[i]);
          }
        } else if constexpr (std::is_same_v<T, ShellDesc>) {
          const double d = vec::dist(p.center, x);
          if (d < p.radius) {
            const double s = d > 0.0 ? p.radius / d : 1.0;
            if (d > 0.0) {
              for (std::size_t i = 0; i < out.size(); ++i)
                out[i] = p.center[i] + s * (x[i] - p.center[i]);
            } else {
              out = p.center;
              out[0] += p.radius;
            }
          }
        } else if constexpr (std::is_same_v<T, SegmentDesc>) {
          double dir2 = 0.0, proj = 0.0;
          for (std::size_t i = 0; i < p.a.size(); ++i) {
            const double dd = p.b[i] - p.a[i];
            dir2 += dd * dd;
            proj += dd * (x[i] - p.a[i]);
          }
          const double t =
              dir2 > 0.0 ? std::clamp(proj / dir2, 0.0, 1.0) : 0.0;
          for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = p.a[i] + t * (p.b[i] - p.a[i]);
        } else {
          for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = std::clamp(x[i], p.lo[i], p.hi[i]);
        }
        return out;
      },
      prim);
}

bool is_thin(const CompactPrimitive& prim) {
  return std::holds_alternative<PointsDesc>(prim) ||
         std::holds_alternative<SegmentDesc>(prim);
}

namespace {

// Signed Euclidean distance to a volumetric primitive (negative inside).
double signed_distance(const CompactPrimitive& prim,
                       std::span<const double> x) {
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BallDesc>) {
          return vec::dist(p.center, x) - p.radius;
        } else if constexpr (std::is_same_v<T, ShellDesc>) {
          return p.radius - vec::dist(p.center, x);
        } else if constexpr (std::is_same_v<T, BoxDesc>) {
          double inside = -std::numeric_limits<double>::infinity();
          double outside2 = 0.0;
          bool out = false;
          for (std::size_t i = 0; i < p.lo.size(); ++i) {
            const double d = std::max(p.lo[i] - x[i], x[i] - p.hi[i]);
            if (d > 0.0) {
              out = true;
              outside2 += d * d;
            }
            inside = std::max(inside, d);
          }
          return out ? std::sqrt(outside2) : inside;
        } else {
          return distance_to(prim, x);  // thin: unsigned
        }
      },
      prim);
}

}  // namespace

double signed_clearance(const CompactSet& set, std::span<const double> x,
                        double thin_tol) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& prim : set.parts) {
    const double offset = is_thin(prim) ? thin_tol : 0.0;
    best = std::min(best, signed_distance(prim, x) - offset);
  }
  return best;
}

bool contains(const CompactSet& set, std::span<const double> x,
              double thin_tol) {
  return signed_clearance(set, x, thin_tol) <= 0.0;
}

CompactSet parse_compact_set(std::istream& in, int n) {
  CompactSet set;
  set.n = n;
  std::string line;
  auto read_values = [&](std::istringstream& ss, int count) {
    std::vector<double> values(count);
    for (int i = 0; i < count; ++i)
      if (!(ss >> values[i]))
        throw std::invalid_argument("parse_compact_set: malformed line: " +
                                    line);
    return values;
  };
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string kind;
    if (!(ss >> kind) || kind.empty() || kind[0] == '#') continue;
    if (kind == "point") {
      auto xs = read_values(ss, n);
      set.parts.push_back(PointsDesc{{std::move(xs)}});
    } else if (kind == "ball") {
      auto c = read_values(ss, n);
      double r;
      if (!(ss >> r) || !(r > 0.0))
        throw std::invalid_argument("parse_compact_set: bad ball radius");
      set.parts.push_back(BallDesc{std::move(c), r});
    } else if (kind == "segment") {
      auto a = read_values(ss, n);
      auto b = read_values(ss, n);
      set.parts.push_back(SegmentDesc{std::move(a), std::move(b)});
    } else if (kind == "shell") {
      auto c = read_values(ss, n);
      double r;
      if (!(ss >> r) || !(r > 0.0))
        throw std::invalid_argument("parse_compact_set: bad shell radius");
      set.parts.push_back(ShellDesc{std::move(c), r});
    } else if (kind == "box") {
      auto lo = read_values(ss, n);
      auto hi = read_values(ss, n);
      set.parts.push_back(BoxDesc{std::move(lo), std::move(hi)});
    } else {
      throw std::invalid_argument("parse_compact_set: unknown primitive '" +
                                  kind + "'");
    }
  }
  for (const auto& prim : set.parts)
    if (primitive_dim(prim) != n)
      throw std::invalid_argument("parse_compact_set: dimension mismatch");
  return set;
}

CompactSet parse_compact_set(const std::string& text, int n) {
  std::istringstream in(text);
  return parse_compact_set(in, n);
}

bool region_contains(const Region& region, std::span<const double> x) {
  return region_clearance(region, x) > 0.0;
}

double region_clearance(const Region& region, std::span<const double> x) {
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, RegionBall>) {
          return r.radius - vec::dist(r.center, x);
        } else {
          double clearance = std::numeric_limits<double>::infinity();
          for (std::size_t i = 0; i < r.lo.size(); ++i)
            clearance = std::min({clearance, x[i] - r.lo[i], r.hi[i] - x[i]});
          return clearance;
        }
      },
      region);
}

std::pair<double, double> region_cube(const Region& region, int n) {
  return std::visit(
      [&](const auto& r) -> std::pair<double, double> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, RegionBall>) {
          double lo = r.center[0] - r.radius, hi = r.center[0] + r.radius;
          for (int i = 1; i < n; ++i) {
            lo = std::min(lo, r.center[i] - r.radius);
            hi = std::max(hi, r.center[i] + r.radius);
          }
          return {lo, hi};
        } else {
          double lo = r.lo[0], hi = r.hi[0];
          for (int i = 1; i < n; ++i) {
            lo = std::min(lo, r.lo[i]);
            hi = std::max(hi, r.hi[i]);
          }
          return {lo, hi};
        }
      },
      region);
}

}  // namespace ringq
