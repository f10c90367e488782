#include "perc/geometry.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace perc {

bool is_finite(const Point2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::Degenerate: return "Degenerate";
    case Errc::NotConnected: return "NotConnected";
    case Errc::NotPlanar: return "NotPlanar";
    case Errc::BridgeEdge: return "BridgeEdge";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::ZeroLengthEdge: return "ZeroLengthEdge";
    case Errc::CoincidentDirections: return "CoincidentDirections";
    case Errc::SelfIntersectingPolygon: return "SelfIntersectingPolygon";
    case Errc::UnknownEdge: return "UnknownEdge";
    case Errc::UnknownCell: return "UnknownCell";
    case Errc::CellsNotDistinct: return "CellsNotDistinct";
    case Errc::TooFewSharedVertices: return "TooFewSharedVertices";
    case Errc::OriginVacant: return "OriginVacant";
    case Errc::DualInvalid: return "DualInvalid";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::MissingVacantNeighbor: return "MissingVacantNeighbor";
    case Errc::VertexOnSide: return "VertexOnSide";
    case Errc::NotNicelyCovered: return "NotNicelyCovered";
    case Errc::NotNicelyPadded: return "NotNicelyPadded";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::DualityViolation: return "DualityViolation";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::IoError: return "IoError";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {

int sign_of(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Exact sign of (b-a) x (c-a) over the rationals.  Doubles convert to mpq
// without loss, so this is the ground truth the filter falls back to.
int orient_exact(const Point2& a, const Point2& b, const Point2& c) {
  mpq_t ax, ay, bx, by, cx, cy, t0, t1, t2, t3;
  mpq_inits(ax, ay, bx, by, cx, cy, t0, t1, t2, t3, nullptr);
  mpq_set_d(ax, a.x);
  mpq_set_d(ay, a.y);
  mpq_set_d(bx, b.x);
  mpq_set_d(by, b.y);
  mpq_set_d(cx, c.x);
  mpq_set_d(cy, c.y);
  mpq_sub(t0, bx, ax);   // bx-ax
  mpq_sub(t1, cy, ay);   // cy-ay
  mpq_mul(t0, t0, t1);   // (bx-ax)(cy-ay)
  mpq_sub(t2, by, ay);   // by-ay
  mpq_sub(t3, cx, ax);   // cx-ax
  mpq_mul(t2, t2, t3);   // (by-ay)(cx-ax)
  int s = mpq_cmp(t0, t2);
  mpq_clears(ax, ay, bx, by, cx, cy, t0, t1, t2, t3, nullptr);
  return sign_of(static_cast<double>(s));
}

// Shewchuk's stage-A error bound for the 2D orientation determinant.
const double kEps = std::ldexp(1.0, -53);
const double kCcwErrBoundA = (3.0 + 16.0 * kEps) * kEps;

}  // namespace

int orient(const Point2& a, const Point2& b, const Point2& c) {
  const double detleft = (a.x - c.x) * (b.y - c.y);
  const double detright = (a.y - c.y) * (b.x - c.x);
  const double det = detleft - detright;
  double detsum;

  if (detleft > 0.0) {
    if (detright <= 0.0) return sign_of(det);
    detsum = detleft + detright;
  } else if (detleft < 0.0) {
    if (detright >= 0.0) return sign_of(det);
    detsum = -detleft - detright;
  } else {
    // detleft is exactly zero, so the sign is -sign(detright); products keep
    // their sign under rounding.
    return -sign_of(detright);
  }

  const double errbound = kCcwErrBoundA * detsum;
  if (det >= errbound || -det >= errbound) return sign_of(det);
  return orient_exact(a, b, c);
}

namespace {

bool in_bbox(const Point2& p, const Point2& a, const Point2& b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

// Exact: p collinear with [a,b] and within its bounding box.
bool on_segment_exact(const Point2& p, const Point2& a, const Point2& b) {
  return orient(a, b, p) == 0 && in_bbox(p, a, b);
}

double dist2_point_segment(const Point2& p, const Point2& a, const Point2& b) {
  const double vx = b.x - a.x, vy = b.y - a.y;
  const double wx = p.x - a.x, wy = p.y - a.y;
  const double vv = vx * vx + vy * vy;
  double t = vv > 0 ? (wx * vx + wy * vy) / vv : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double dx = wx - t * vx, dy = wy - t * vy;
  return dx * dx + dy * dy;
}

// Same nonzero direction from a common origin, given collinearity.
// Coordinate comparisons are exact.
bool same_ray(const Point2& u, const Point2& p, const Point2& q) {
  const int sx1 = sign_of(p.x - u.x), sy1 = sign_of(p.y - u.y);
  const int sx2 = sign_of(q.x - u.x), sy2 = sign_of(q.y - u.y);
  return sx1 == sx2 && sy1 == sy2 && (sx1 != 0 || sy1 != 0);
}

bool segments_touch(const Point2& a1, const Point2& a2, const Point2& b1, const Point2& b2) {
  const int d1 = orient(b1, b2, a1);
  const int d2 = orient(b1, b2, a2);
  const int d3 = orient(a1, a2, b1);
  const int d4 = orient(a1, a2, b2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && in_bbox(a1, b1, b2)) return true;
  if (d2 == 0 && in_bbox(a2, b1, b2)) return true;
  if (d3 == 0 && in_bbox(b1, a1, a2)) return true;
  if (d4 == 0 && in_bbox(b2, a1, a2)) return true;
  return false;
}

}  // namespace

bool segments_properly_intersect(const Point2& a1, const Point2& a2, const Point2& b1,
                                 const Point2& b2) {
  if (!segments_touch(a1, a2, b1, b2)) return false;

  // Count shared endpoints.
  int shared = 0;
  Point2 v{}, pa{}, pb{};
  if (a1 == b1 || a1 == b2) {
    ++shared;
    v = a1;
    pa = a2;
    pb = (a1 == b1) ? b2 : b1;
  }
  if (a2 == b1 || a2 == b2) {
    ++shared;
    v = a2;
    pa = a1;
    pb = (a2 == b1) ? b2 : b1;
  }
  if (shared == 0) return true;
  if (shared >= 2) return true;  // identical segments overlap fully

  // Exactly one shared endpoint: further contact exists iff the segments are
  // collinear and extend along the same ray from it.
  if (orient(v, pa, pb) != 0) return false;
  return same_ray(v, pa, pb);
}

PointLoc classify_point(const Point2& p, std::span<const Point2> poly) {
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    if (on_segment_exact(p, a, b)) return PointLoc::Boundary;
    if (dist2_point_segment(p, a, b) <= kOnSegmentEps * kOnSegmentEps) return PointLoc::Boundary;
  }
  bool in = false;
  for (size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    if (a.y <= p.y) {
      if (b.y > p.y && orient(a, b, p) > 0) in = !in;
    } else {
      if (b.y <= p.y && orient(a, b, p) < 0) in = !in;
    }
  }
  return in ? PointLoc::Inside : PointLoc::Outside;
}

bool is_simple_polygon(std::span<const Point2> poly) {
  const size_t n = poly.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (poly[i] == poly[j]) return false;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (segments_properly_intersect(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]))
        return false;
    }
  }
  return true;
}

PointLoc point_in_polygon(const Point2& p, std::span<const Point2> poly) {
  if (!is_simple_polygon(poly)) fail(Errc::SelfIntersectingPolygon, "polygon is not simple");
  return classify_point(p, poly);
}

double polygon_signed_area(std::span<const Point2> poly) {
  double s = 0.0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

Point2 polygon_centroid(std::span<const Point2> poly) {
  double a = 0.0, cx = 0.0, cy = 0.0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % n];
    const double w = p.x * q.y - q.x * p.y;
    a += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  if (a == 0.0) {
    // Degenerate; fall back to the vertex mean.
    Point2 m{};
    for (const auto& p : poly) {
      m.x += p.x;
      m.y += p.y;
    }
    m.x /= static_cast<double>(n);
    m.y /= static_cast<double>(n);
    return m;
  }
  return {cx / (3.0 * a), cy / (3.0 * a)};
}

Point2 polygon_interior_point(std::span<const Point2> poly) {
  Point2 c = polygon_centroid(poly);
  if (classify_point(c, poly) == PointLoc::Inside) return c;

  // Ear clipping on a working copy; the polygon is assumed simple.
  std::vector<Point2> v(poly.begin(), poly.end());
  if (polygon_signed_area(v) < 0) std::reverse(v.begin(), v.end());
  Point2 best{};
  double best_area = -1.0;
  while (v.size() > 3) {
    const size_t n = v.size();
    bool clipped = false;
    for (size_t i = 0; i < n; ++i) {
      const Point2& a = v[(i + n - 1) % n];
      const Point2& b = v[i];
      const Point2& c2 = v[(i + 1) % n];
      const int o = orient(a, b, c2);
      if (o == 0) {  // zero-area ear, drop the middle vertex
        v.erase(v.begin() + static_cast<long>(i));
        clipped = true;
        break;
      }
      if (o < 0) continue;
      bool blocked = false;
      for (size_t j = 0; j < n && !blocked; ++j) {
        if (j == i || j == (i + n - 1) % n || j == (i + 1) % n) continue;
        const Point2& q = v[j];
        if (orient(a, b, q) >= 0 && orient(b, c2, q) >= 0 && orient(c2, a, q) >= 0) blocked = true;
      }
      if (blocked) continue;
      const double area = std::abs(polygon_signed_area(std::array{a, b, c2}));
      if (area > best_area) {
        best_area = area;
        best = Point2{(a.x + b.x + c2.x) / 3.0, (a.y + b.y + c2.y) / 3.0};
      }
      v.erase(v.begin() + static_cast<long>(i));
      clipped = true;
      break;
    }
    if (!clipped) break;  // numerically stuck; use what we have
  }
  if (v.size() == 3) {
    const double area = std::abs(polygon_signed_area(v));
    if (area > best_area) {
      best_area = area;
      best = Point2{(v[0].x + v[1].x + v[2].x) / 3.0, (v[0].y + v[1].y + v[2].y) / 3.0};
    }
  }
  if (best_area <= 0) fail(Errc::Internal, "no interior point for degenerate polygon");
  return best;
}

bool direction_in_open_wedge(const Point2& u, const Point2& a, const Point2& b, const Point2& q) {
  const int s = orient(u, a, b);
  const int caq = orient(u, a, q);
  if (s == 0) return caq > 0;  // wedge of angle pi: the open half-plane left of u->a
  const int cqb = orient(u, q, b);
  if (s > 0) return caq > 0 && cqb > 0;
  // Reflex wedge: complement of the closed wedge from b counterclockwise to a.
  const int cbq = orient(u, b, q);
  const int cqa = orient(u, q, a);
  return !(cbq >= 0 && cqa >= 0);
}

RotationSystem build_rotation_system(std::span<const Point2> pts,
                                     std::span<const std::pair<int, int>> edges) {
  const int n = static_cast<int>(pts.size());
  RotationSystem rot;
  rot.order.assign(n, {});
  rot.pos.assign(n, {});

  std::vector<std::pair<int, int>> seen;
  seen.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) fail(Errc::Degenerate, "edge endpoint out of range");
    if (a == b) fail(Errc::ZeroLengthEdge, "loop edge at vertex " + std::to_string(a));
    if (pts[a] == pts[b])
      fail(Errc::ZeroLengthEdge,
           "edge (" + std::to_string(a) + "," + std::to_string(b) + ") has zero length");
    seen.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    fail(Errc::DuplicateEdge, "duplicate edge in input");

  for (const auto& [a, b] : edges) {
    rot.order[a].push_back(b);
    rot.order[b].push_back(a);
  }

  // Half 0 covers angles [0, pi): dy > 0, or dy == 0 with dx > 0.
  auto half = [&](int v, int u) {
    const double dy = pts[u].y - pts[v].y;
    const double dx = pts[u].x - pts[v].x;
    return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1;
  };

  for (int v = 0; v < n; ++v) {
    auto& o = rot.order[v];
    std::sort(o.begin(), o.end(), [&](int u1, int u2) {
      const int h1 = half(v, u1), h2 = half(v, u2);
      if (h1 != h2) return h1 < h2;
      const int s = orient(pts[v], pts[u1], pts[u2]);
      if (s != 0) return s > 0;
      return u1 < u2;
    });
    for (size_t k = 0; k + 1 < o.size(); ++k) {
      if (half(v, o[k]) == half(v, o[k + 1]) && orient(pts[v], pts[o[k]], pts[o[k + 1]]) == 0)
        fail(Errc::CoincidentDirections,
             "edges (" + std::to_string(v) + "," + std::to_string(o[k]) + ") and (" +
                 std::to_string(v) + "," + std::to_string(o[k + 1]) + ") leave in the same direction");
    }
    for (size_t k = 0; k < o.size(); ++k) rot.pos[v].emplace(o[k], static_cast<int>(k));
  }
  return rot;
}

double walk_signed_area(std::span<const int> walk, std::span<const Point2> pts) {
  double s = 0.0;
  const size_t n = walk.size();
  for (size_t i = 0; i < n; ++i) {
    const Point2& a = pts[walk[i]];
    const Point2& b = pts[walk[(i + 1) % n]];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

FaceSet trace_faces(const RotationSystem& rot, std::span<const Point2> pts) {
  const int n = static_cast<int>(rot.order.size());
  FaceSet fs;

  // visited[v][k]: directed edge v -> order[v][k] already consumed.
  std::vector<std::vector<char>> visited(n);
  for (int v = 0; v < n; ++v) visited[v].assign(rot.order[v].size(), 0);

  for (int v0 = 0; v0 < n; ++v0) {
    for (size_t k0 = 0; k0 < rot.order[v0].size(); ++k0) {
      if (visited[v0][k0]) continue;
      std::vector<int> walk;
      int v = v0;
      int k = static_cast<int>(k0);
      while (!visited[v][k]) {
        visited[v][k] = 1;
        walk.push_back(v);
        const int w = rot.order[v][k];
        const int back = rot.pos[w].at(v);
        const int deg = static_cast<int>(rot.order[w].size());
        v = w;
        // predecessor of the reversed ending: keeps the face on the left, so
        // bounded faces come out counterclockwise
        k = (back + deg - 1) % deg;
      }
      fs.faces.push_back(std::move(walk));
    }
  }

  double min_area = std::numeric_limits<double>::infinity();
  for (size_t f = 0; f < fs.faces.size(); ++f) {
    const double a = walk_signed_area(fs.faces[f], pts);
    if (a < min_area) {
      min_area = a;
      fs.outer = static_cast<int>(f);
    }
  }
  return fs;
}

}  // namespace perc
