#pragma once

#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "perc/errors.hpp"

namespace perc {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
};

bool is_finite(const Point2& p);

/// Tolerance used only when classifying arbitrary (non-vertex) query points
/// against segments; all combinatorial predicates are exact.
inline constexpr double kOnSegmentEps = 1e-9;

/// Sign of twice the signed area of triangle (a,b,c): +1 counterclockwise,
/// -1 clockwise, 0 collinear.  Evaluated with a floating-point filter and an
/// exact rational fallback, so the result is always correct.
int orient(const Point2& a, const Point2& b, const Point2& c);

enum class PointLoc { Inside, Boundary, Outside };

/// Point-vs-polygon classification without validating the polygon.
/// The polygon is a closed vertex list (no repeated first vertex).
PointLoc classify_point(const Point2& p, std::span<const Point2> poly);

/// Validating variant: rejects self-intersecting polygons.
PointLoc point_in_polygon(const Point2& p, std::span<const Point2> poly);

/// True iff the two closed segments share at least one point that is not a
/// common endpoint.  This is the notion of "illegal contact" used for
/// straight-line planarity: touching, crossing, overlap and T-junctions all
/// count, meeting only at a shared endpoint does not.
bool segments_properly_intersect(const Point2& a1, const Point2& a2, const Point2& b1,
                                 const Point2& b2);

bool is_simple_polygon(std::span<const Point2> poly);

double polygon_signed_area(std::span<const Point2> poly);
Point2 polygon_centroid(std::span<const Point2> poly);

/// A point strictly inside the polygon: the centroid when it qualifies,
/// otherwise the centroid of the largest ear-clipped triangle.
Point2 polygon_interior_point(std::span<const Point2> poly);

/// True iff direction u->q lies strictly inside the open wedge swept
/// counterclockwise from direction u->a to direction u->b.
bool direction_in_open_wedge(const Point2& u, const Point2& a, const Point2& b, const Point2& q);

/// Counterclockwise angular order of the incident edge-endings at each
/// vertex.  `order[v]` lists neighbor vertex indices; `pos[v]` inverts it.
struct RotationSystem {
  std::vector<std::vector<int>> order;
  std::vector<std::unordered_map<int, int>> pos;

  int degree(int v) const { return static_cast<int>(order[v].size()); }

  /// Successor of neighbor `u` in the counterclockwise order at `v`.
  int next_ccw(int v, int u) const {
    const auto& o = order[v];
    int k = pos[v].at(u);
    return o[(k + 1) % o.size()];
  }
};

/// Builds the rotation system of a straight-line embedding.
/// Throws DuplicateEdge, ZeroLengthEdge, CoincidentDirections.
RotationSystem build_rotation_system(std::span<const Point2> pts,
                                     std::span<const std::pair<int, int>> edges);

/// Faces as closed vertex walks; `faces[f][i] -> faces[f][(i+1)%len]` are the
/// directed edges of the walk.  `outer` indexes the unbounded face.
struct FaceSet {
  std::vector<std::vector<int>> faces;
  int outer = -1;
};

/// Standard face tracing: the successor of directed edge (u,v) is
/// (v, next_ccw(v, u)).  Bounded faces come out counterclockwise.
FaceSet trace_faces(const RotationSystem& rot, std::span<const Point2> pts);

double walk_signed_area(std::span<const int> walk, std::span<const Point2> pts);

}  // namespace perc
