#include "perc/crossings.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>

namespace perc {

const char* cell_class_name(CellClass c) {
  switch (c) {
    case CellClass::Left: return "Left";
    case CellClass::Right: return "Right";
    case CellClass::Top: return "Top";
    case CellClass::Bottom: return "Bottom";
    case CellClass::CornerTL: return "CornerTL";
    case CellClass::CornerTR: return "CornerTR";
    case CellClass::CornerBL: return "CornerBL";
    case CellClass::CornerBR: return "CornerBR";
    case CellClass::Interior: return "Interior";
    case CellClass::Outside: return "Outside";
  }
  return "?";
}

namespace {

std::array<std::pair<Point2, Point2>, 4> side_segments(const Rect& r) {
  return {{{r.corner_bl(), r.corner_tl()},    // Left
           {r.corner_br(), r.corner_tr()},    // Right
           {r.corner_tl(), r.corner_tr()},    // Top
           {r.corner_bl(), r.corner_br()}}};  // Bottom
}

bool on_rect_boundary(const Rect& r, const Point2& p) {
  const bool on_v = (p.x == r.x0 || p.x == r.x1) && r.y0 <= p.y && p.y <= r.y1;
  const bool on_h = (p.y == r.y0 || p.y == r.y1) && r.x0 <= p.x && p.x <= r.x1;
  return on_v || on_h;
}

bool polygon_intersects_rect(std::span<const Point2> poly, const Rect& r) {
  for (const Point2& p : poly)
    if (r.contains_closed(p)) return true;
  for (const Point2& c : {r.corner_bl(), r.corner_br(), r.corner_tr(), r.corner_tl()})
    if (classify_point(c, poly) != PointLoc::Outside) return true;
  const auto sides = side_segments(r);
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i)
    for (const auto& [s1, s2] : sides)
      if (segments_properly_intersect(poly[i], poly[(i + 1) % n], s1, s2)) return true;
  return false;
}

CellClass corner_class(int which) {
  switch (which) {
    case 0: return CellClass::CornerTL;
    case 1: return CellClass::CornerTR;
    case 2: return CellClass::CornerBL;
    default: return CellClass::CornerBR;
  }
}

int rect_outer_of(const PlanarLattice& lat, const Rect& r, const std::pair<int, int>& edge) {
  return r.contains_strict(lat.pts[edge.first]) ? edge.second : edge.first;
}

}  // namespace

RectangleCover build_rectangle_cover(const CellDecomposition& dec, const Rect& rect) {
  if (!(rect.x0 < rect.x1 && rect.y0 < rect.y1)) fail(Errc::InvalidSpec, "empty rectangle");
  const PlanarLattice& lat = dec.lattice;
  RectangleCover cov;
  cov.rect = rect;

  for (int v = 0; v < lat.vcount(); ++v)
    if (on_rect_boundary(rect, lat.pts[v]))
      fail(Errc::VertexOnSide, "vertex " + std::to_string(lat.ids[v]) + " lies on a rectangle side");

  const auto sides = side_segments(rect);

  // Edge-vs-side crossings; an edge crossing two sides breaks the covering.
  std::vector<std::array<char, 4>> edge_cross(lat.ecount(), {0, 0, 0, 0});
  for (int e = 0; e < lat.ecount(); ++e) {
    const auto& [a, b] = lat.edges[e];
    int total = 0;
    for (int s = 0; s < 4; ++s) {
      if (segments_properly_intersect(lat.pts[a], lat.pts[b], sides[s].first, sides[s].second)) {
        edge_cross[e][s] = 1;
        ++total;
      }
    }
    if (total > 1)
      fail(Errc::NotNicelyCovered, "edge (" + std::to_string(lat.ids[a]) + "," +
                                       std::to_string(lat.ids[b]) + ") crosses two sides");
  }

  // Classification.
  const std::array<Point2, 4> corners{rect.corner_tl(), rect.corner_tr(), rect.corner_bl(),
                                      rect.corner_br()};
  cov.cls.assign(dec.cell_count(), CellClass::Outside);
  for (int c = 0; c < dec.cell_count(); ++c) {
    const auto poly = cycle_polygon(lat, dec.cells[c].boundary);
    std::array<int, 4> cross = {0, 0, 0, 0};
    const auto& bverts = dec.cells[c].boundary.v;
    const int n = static_cast<int>(bverts.size());
    for (int i = 0; i < n; ++i) {
      const int e = lat.edge_id(bverts[i], bverts[(i + 1) % n]);
      for (int s = 0; s < 4; ++s) cross[s] += edge_cross[e][s];
    }
    int corners_in = 0, corner_which = -1;
    for (int k = 0; k < 4; ++k) {
      const PointLoc loc = classify_point(corners[k], poly);
      if (loc == PointLoc::Boundary)
        fail(Errc::NotNicelyCovered, "rectangle corner on boundary of cell " + dec.cell_label(c));
      if (loc == PointLoc::Inside) {
        ++corners_in;
        corner_which = k;
      }
    }
    int verts_in = 0;
    for (int v : bverts) verts_in += rect.contains_strict(lat.pts[v]) ? 1 : 0;

    if (corners_in > 0) {
      if (corners_in != 1)
        fail(Errc::NotNicelyCovered, "cell " + dec.cell_label(c) + " contains " +
                                         std::to_string(corners_in) + " rectangle corners");
      static const int expect[4][2] = {{0, 2}, {1, 2}, {0, 3}, {1, 3}};  // TL,TR,BL,BR -> sides
      for (int s = 0; s < 4; ++s) {
        const bool needed = s == expect[corner_which][0] || s == expect[corner_which][1];
        if (needed && cross[s] != 1)
          fail(Errc::NotNicelyCovered,
               "corner cell " + dec.cell_label(c) + " does not cross its two sides once each");
        if (!needed && cross[s] != 0)
          fail(Errc::NotNicelyCovered, "corner cell " + dec.cell_label(c) + " crosses a far side");
      }
      if (verts_in != 1)
        fail(Errc::NotNicelyCovered, "corner cell " + dec.cell_label(c) + " has " +
                                         std::to_string(verts_in) + " vertices inside");
      cov.cls[c] = corner_class(corner_which);
      continue;
    }

    const int total = cross[0] + cross[1] + cross[2] + cross[3];
    if (total == 0) {
      if (verts_in == n)
        cov.cls[c] = CellClass::Interior;
      else if (verts_in == 0)
        cov.cls[c] = CellClass::Outside;
      else
        fail(Errc::Internal, "cell straddles the boundary without crossings");
      continue;
    }
    int side = -1;
    for (int s = 0; s < 4; ++s)
      if (cross[s] > 0) {
        if (side >= 0)
          fail(Errc::NotNicelyCovered,
               "cell " + dec.cell_label(c) + " crosses two sides without containing a corner");
        side = s;
      }
    if (cross[side] != 2)
      fail(Errc::NotNicelyCovered, "cell " + dec.cell_label(c) + " crosses a side " +
                                       std::to_string(cross[side]) + " times");
    cov.cls[c] = static_cast<CellClass>(side);
  }

  for (int c = 0; c < dec.cell_count(); ++c)
    if (cov.cls[c] == CellClass::Interior) cov.interior_cells.push_back(c);
  auto find_corner = [&](CellClass cc) {
    int found = -1;
    for (int c = 0; c < dec.cell_count(); ++c) {
      if (cov.cls[c] != cc) continue;
      if (found >= 0) fail(Errc::Internal, "duplicate corner class");
      found = c;
    }
    if (found < 0) fail(Errc::NotNicelyCovered, std::string("no ") + cell_class_name(cc) + " cell");
    return found;
  };
  cov.corner[0] = find_corner(CellClass::CornerTL);
  cov.corner[1] = find_corner(CellClass::CornerTR);
  cov.corner[2] = find_corner(CellClass::CornerBL);
  cov.corner[3] = find_corner(CellClass::CornerBR);

  // Cut edges, ordered along each side in chain order.
  for (int e = 0; e < lat.ecount(); ++e) {
    for (int s = 0; s < 4; ++s) {
      if (!edge_cross[e][s]) continue;
      const auto& [a, b] = lat.edges[e];
      const bool a_in = rect.contains_strict(lat.pts[a]);
      const bool b_in = rect.contains_strict(lat.pts[b]);
      if (a_in == b_in)
        fail(Errc::NotNicelyCovered, "side-crossing edge (" + std::to_string(lat.ids[a]) + "," +
                                         std::to_string(lat.ids[b]) +
                                         ") does not join interior to exterior");
      CutEdge cut;
      cut.edge = e;
      cut.inner = a_in ? a : b;
      cut.outer = a_in ? b : a;
      const Point2& p = lat.pts[a];
      const Point2& q = lat.pts[b];
      if (s == 0 || s == 1) {
        const double x = (s == 0) ? rect.x0 : rect.x1;
        cut.t = p.y + (q.y - p.y) * (x - p.x) / (q.x - p.x);
      } else {
        const double y = (s == 2) ? rect.y1 : rect.y0;
        cut.t = p.x + (q.x - p.x) * (y - p.y) / (q.y - p.y);
      }
      cov.cuts[s].push_back(cut);
    }
  }
  // Left and right top-to-bottom, top and bottom left-to-right.
  std::sort(cov.cuts[0].begin(), cov.cuts[0].end(),
            [](const CutEdge& a, const CutEdge& b) { return a.t > b.t; });
  std::sort(cov.cuts[1].begin(), cov.cuts[1].end(),
            [](const CutEdge& a, const CutEdge& b) { return a.t > b.t; });
  std::sort(cov.cuts[2].begin(), cov.cuts[2].end(),
            [](const CutEdge& a, const CutEdge& b) { return a.t < b.t; });
  std::sort(cov.cuts[3].begin(), cov.cuts[3].end(),
            [](const CutEdge& a, const CutEdge& b) { return a.t < b.t; });

  // Pair consecutive cut edges into side cells and check the chain ends.
  static const int corner_first[4] = {0, 1, 0, 2};  // TL, TR, TL, BL
  static const int corner_last[4] = {2, 3, 1, 3};   // BL, BR, TR, BR
  for (int s = 0; s < 4; ++s) {
    const auto& cuts = cov.cuts[s];
    if (cuts.size() < 2)
      fail(Errc::NotNicelyCovered,
           std::string(cell_class_name(static_cast<CellClass>(s))) + " side has fewer than 2 cut edges");
    auto cells_of = [&](int e) { return dec.edge_cells[e]; };
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
      const auto ca = cells_of(cuts[i].edge);
      const auto cb = cells_of(cuts[i + 1].edge);
      int common = -1, count = 0;
      for (int x : ca)
        for (int y : cb)
          if (x >= 0 && x == y) {
            common = x;
            ++count;
          }
      if (count != 1)
        fail(Errc::NotNicelyCovered, "consecutive cut edges on side " +
                                         std::string(cell_class_name(static_cast<CellClass>(s))) +
                                         " do not bound exactly one common cell");
      if (cov.cls[common] != static_cast<CellClass>(s))
        fail(Errc::NotNicelyCovered,
             "cell " + dec.cell_label(common) + " between cut edges is " +
                 cell_class_name(cov.cls[common]) + ", expected " +
                 cell_class_name(static_cast<CellClass>(s)));
      cov.side_cells[s].push_back(common);
    }
    // chain ends attach to the corner cells
    auto other_cell = [&](const CutEdge& cut, int not_this) {
      const auto ec = dec.edge_cells[cut.edge];
      if (ec[1] < 0)
        fail(Errc::NotNicelyCovered, "cut edge on the lattice hull");
      return ec[0] == not_this ? ec[1] : ec[0];
    };
    if (other_cell(cuts.front(), cov.side_cells[s].front()) != cov.corner[corner_first[s]])
      fail(Errc::NotNicelyCovered, "first cut edge of side " +
                                       std::string(cell_class_name(static_cast<CellClass>(s))) +
                                       " does not attach to its corner cell");
    if (other_cell(cuts.back(), cov.side_cells[s].back()) != cov.corner[corner_last[s]])
      fail(Errc::NotNicelyCovered, "last cut edge of side " +
                                       std::string(cell_class_name(static_cast<CellClass>(s))) +
                                       " does not attach to its corner cell");
    // every side-classified cell is accounted for
    size_t classified = 0;
    for (int c = 0; c < dec.cell_count(); ++c)
      if (cov.cls[c] == static_cast<CellClass>(s)) ++classified;
    if (classified != cov.side_cells[s].size())
      fail(Errc::NotNicelyCovered, "side cells of " +
                                       std::string(cell_class_name(static_cast<CellClass>(s))) +
                                       " do not form a single chain");
  }

  // Side-cell boundary = two cut edges + one interior path + one exterior path.
  for (int s = 0; s < 4; ++s) {
    for (size_t i = 0; i < cov.side_cells[s].size(); ++i) {
      const int c = cov.side_cells[s][i];
      const auto& bv = dec.cells[c].boundary.v;
      const int n = static_cast<int>(bv.size());
      const CutEdge& e1 = cov.cuts[s][i];
      const CutEdge& e2 = cov.cuts[s][i + 1];
      int k1 = -1, k2 = -1;
      for (int k = 0; k < n; ++k) {
        const int a = bv[k], b = bv[(k + 1) % n];
        const int eid = dec.lattice.edge_id(a, b);
        if (eid == e1.edge) k1 = k;
        if (eid == e2.edge) k2 = k;
      }
      if (k1 < 0 || k2 < 0) fail(Errc::Internal, "cut edge missing from side cell boundary");
      auto arc = [&](int from, int to) {  // vertices strictly between edge slots
        std::vector<int> out;
        for (int k = (from + 1) % n; k != (to + 1) % n; k = (k + 1) % n) out.push_back(bv[k]);
        out.pop_back();  // drop the vertex that begins the closing cut edge
        return out;
      };
      std::vector<int> arc1 = arc(k1, k2);
      std::vector<int> arc2 = arc(k2, k1);
      auto all_inside = [&](const std::vector<int>& vs) {
        return std::all_of(vs.begin(), vs.end(),
                           [&](int v) { return rect.contains_strict(lat.pts[v]); });
      };
      auto all_outside = [&](const std::vector<int>& vs) {
        return std::all_of(vs.begin(), vs.end(),
                           [&](int v) { return !rect.contains_closed(lat.pts[v]); });
      };
      std::vector<int>* inner_arc = nullptr;
      if (!arc1.empty() && all_inside(arc1) && (arc2.empty() || all_outside(arc2)))
        inner_arc = &arc1;
      else if (!arc2.empty() && all_inside(arc2) && (arc1.empty() || all_outside(arc1)))
        inner_arc = &arc2;
      if (inner_arc == nullptr || inner_arc->empty())
        fail(Errc::NotNicelyCovered,
             "cell " + dec.cell_label(c) + " does not split into interior and exterior paths");
      if (s == 0) cov.interior_paths.push_back(*inner_arc);
    }
  }

  // Corner cells are not plus adjacent to interior cells.
  for (int k = 0; k < 4; ++k)
    for (int d : dec.plus_adj[cov.corner[k]])
      if (cov.cls[d] == CellClass::Interior)
        fail(Errc::NotNicelyCovered, "corner cell " + dec.cell_label(cov.corner[k]) +
                                         " is plus adjacent to interior cell " + dec.cell_label(d));

  // Same-side cells beyond chain neighbors must be vertex-disjoint; cells of
  // adjacent sides may meet only as the two chain ends at their shared corner.
  auto share_vertex = [&](int a, int b) {
    std::set<int> va(dec.cells[a].boundary.v.begin(), dec.cells[a].boundary.v.end());
    for (int v : dec.cells[b].boundary.v)
      if (va.count(v)) return true;
    return false;
  };
  for (int s = 0; s < 4; ++s) {
    const auto& sc = cov.side_cells[s];
    for (size_t i = 0; i < sc.size(); ++i)
      for (size_t j = i + 2; j < sc.size(); ++j)
        if (share_vertex(sc[i], sc[j]))
          fail(Errc::NotNicelyCovered, "non-neighbor cells " + dec.cell_label(sc[i]) + " and " +
                                           dec.cell_label(sc[j]) + " on one side share a vertex");
  }
  struct AdjacentSides {
    int s1, s2;       // side indices
    bool end1, end2;  // true = last element of the chain is the permitted one
  };
  // (Left,Top @TL): L first & T first; (Top,Right @TR): T last & R first;
  // (Right,Bottom @BR): R last & B last; (Bottom,Left @BL): B first & L last.
  const AdjacentSides adjacent[4] = {{0, 2, false, false}, {2, 1, true, false},
                                     {1, 3, true, true},   {3, 0, false, true}};
  for (const auto& ad : adjacent) {
    const auto& c1 = cov.side_cells[ad.s1];
    const auto& c2 = cov.side_cells[ad.s2];
    for (size_t i = 0; i < c1.size(); ++i)
      for (size_t j = 0; j < c2.size(); ++j) {
        const bool permitted = (i == (ad.end1 ? c1.size() - 1 : 0)) && (j == (ad.end2 ? c2.size() - 1 : 0));
        if (!permitted && share_vertex(c1[i], c2[j]))
          fail(Errc::NotNicelyCovered, "cells " + dec.cell_label(c1[i]) + " and " +
                                           dec.cell_label(c2[j]) +
                                           " of adjacent sides share a vertex away from the corner");
      }
  }

  // Nicely padded: no star adjacency between cells on opposite extended side
  // lines when both are star adjacent to a cell meeting the rectangle.
  {
    std::vector<char> meets_rect(dec.cell_count(), 0);
    std::vector<std::vector<Point2>> polys(dec.cell_count());
    for (int c = 0; c < dec.cell_count(); ++c) {
      polys[c] = cycle_polygon(lat, dec.cells[c].boundary);
      meets_rect[c] = polygon_intersects_rect(polys[c], rect) ? 1 : 0;
    }
    auto near_rect = [&](int c) {
      for (int d : dec.star_adj[c])
        if (meets_rect[d]) return true;
      return false;
    };
    auto on_hline = [&](int c, double y) {
      double lo = polys[c][0].y, hi = polys[c][0].y;
      for (const Point2& p : polys[c]) {
        lo = std::min(lo, p.y);
        hi = std::max(hi, p.y);
      }
      return lo <= y && y <= hi;
    };
    auto on_vline = [&](int c, double x) {
      double lo = polys[c][0].x, hi = polys[c][0].x;
      for (const Point2& p : polys[c]) {
        lo = std::min(lo, p.x);
        hi = std::max(hi, p.x);
      }
      return lo <= x && x <= hi;
    };
    std::vector<int> top_line, bottom_line, left_line, right_line;
    for (int c = 0; c < dec.cell_count(); ++c) {
      if (!near_rect(c)) continue;
      if (on_hline(c, rect.y1)) top_line.push_back(c);
      if (on_hline(c, rect.y0)) bottom_line.push_back(c);
      if (on_vline(c, rect.x0)) left_line.push_back(c);
      if (on_vline(c, rect.x1)) right_line.push_back(c);
    }
    auto check_pairs = [&](const std::vector<int>& za, const std::vector<int>& zb) {
      for (int a : za)
        for (int b : zb) {
          if (a == b)
            fail(Errc::NotNicelyPadded, "cell " + dec.cell_label(a) + " spans opposite side lines");
          if (dec.cells_adjacent(a, b, AdjMode::Star))
            fail(Errc::NotNicelyPadded,
                 "cells " + dec.cell_label(a) + " and " + dec.cell_label(b) +
                     " on opposite side lines are star adjacent");
        }
    };
    check_pairs(top_line, bottom_line);
    check_pairs(left_line, right_line);
  }

  for (int e = 0; e < lat.ecount(); ++e) {
    const auto& [a, b] = lat.edges[e];
    if (rect.contains_strict(lat.pts[a]) && rect.contains_strict(lat.pts[b]))
      cov.interior_edges.push_back(e);
  }

  // State-blind plus crossings, required by the site duality theorem.
  SiteConfig blind;
  blind.occupied.assign(dec.cell_count(), 1);
  cov.has_plus_lr =
      find_site_crossing(dec, cov, blind, AdjMode::Plus, CrossDir::LR, CellState::Occupied)
          .has_value();
  cov.has_plus_td =
      find_site_crossing(dec, cov, blind, AdjMode::Plus, CrossDir::TD, CellState::Occupied)
          .has_value();
  return cov;
}

// ---------------------------------------------------------------------------
// site crossings

namespace {

bool state_matches(const SiteConfig& cfg, int c, CellState st) {
  return st == CellState::Occupied ? cfg.is_occupied(c) : !cfg.is_occupied(c);
}

}  // namespace

std::optional<std::vector<int>> find_site_crossing(const CellDecomposition& dec,
                                                   const RectangleCover& cover,
                                                   const SiteConfig& cfg, AdjMode mode,
                                                   CrossDir dir, CellState state) {
  const CellClass entry = dir == CrossDir::LR ? CellClass::Left : CellClass::Top;
  const CellClass exit = dir == CrossDir::LR ? CellClass::Right : CellClass::Bottom;

  std::vector<int> parent(dec.cell_count(), -2);
  std::queue<int> q;
  for (int c = 0; c < dec.cell_count(); ++c)
    if (cover.cls[c] == entry) {
      parent[c] = -1;
      q.push(c);
    }
  while (!q.empty()) {
    const int c = q.front();
    q.pop();
    const bool at_entry = cover.cls[c] == entry;
    const auto& nb = mode == AdjMode::Star ? dec.star_adj[c] : dec.plus_adj[c];
    for (int d : nb) {
      if (!at_entry && cover.cls[d] == exit) {
        std::vector<int> path{d};
        for (int x = c; x != -1; x = parent[x]) path.push_back(x);
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (cover.cls[d] != CellClass::Interior || parent[d] != -2) continue;
      if (!state_matches(cfg, d, state)) continue;
      parent[d] = c;
      q.push(d);
    }
  }
  return std::nullopt;
}

bool validate_site_crossing(const CellDecomposition& dec, const RectangleCover& cover,
                            const SiteConfig& cfg, AdjMode mode, CrossDir dir, CellState state,
                            const std::vector<int>& path, std::string* why) {
  auto reject = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (path.size() < 3) return reject("path shorter than 3 cells");
  std::set<int> uniq(path.begin(), path.end());
  if (uniq.size() != path.size()) return reject("repeated cell");
  const CellClass entry = dir == CrossDir::LR ? CellClass::Left : CellClass::Top;
  const CellClass exit = dir == CrossDir::LR ? CellClass::Right : CellClass::Bottom;
  if (cover.cls[path.front()] != entry) return reject("first cell not on the entry side");
  if (cover.cls[path.back()] != exit) return reject("last cell not on the exit side");
  for (size_t i = 1; i + 1 < path.size(); ++i) {
    if (cover.cls[path[i]] != CellClass::Interior) return reject("intermediate cell not interior");
    if (!state_matches(cfg, path[i], state)) return reject("intermediate cell has the wrong state");
  }
  for (size_t i = 0; i + 1 < path.size(); ++i)
    if (!dec.cells_adjacent(path[i], path[i + 1], mode)) return reject("consecutive cells not adjacent");
  return true;
}

SiteCrossingReport check_site_duality(const CellDecomposition& dec, const RectangleCover& cover,
                                      const SiteConfig& cfg) {
  if (!cover.has_plus_lr || !cover.has_plus_td)
    fail(Errc::PreconditionViolated,
         "the cover admits no state-blind plus crossing in one direction");

  SiteCrossingReport rep;
  auto run = [&](AdjMode mode, CrossDir dir, CellState st, bool& flag,
                 std::optional<std::vector<int>>& witness) {
    witness = find_site_crossing(dec, cover, cfg, mode, dir, st);
    flag = witness.has_value();
    if (witness) {
      std::string why;
      if (!validate_site_crossing(dec, cover, cfg, mode, dir, st, *witness, &why))
        fail(Errc::Internal, "search returned an invalid site witness: " + why);
    }
  };
  run(AdjMode::Plus, CrossDir::LR, CellState::Occupied, rep.lr_plus_occupied, rep.w_lr_plus_o);
  run(AdjMode::Star, CrossDir::TD, CellState::Vacant, rep.td_star_vacant, rep.w_td_star_v);
  run(AdjMode::Star, CrossDir::LR, CellState::Occupied, rep.lr_star_occupied, rep.w_lr_star_o);
  run(AdjMode::Plus, CrossDir::TD, CellState::Vacant, rep.td_plus_vacant, rep.w_td_plus_v);
  return rep;
}

// ---------------------------------------------------------------------------
// bond crossings

std::optional<std::vector<int>> find_bond_lr_crossing(const CellDecomposition& dec,
                                                      const RectangleCover& cover,
                                                      const BondConfig& bonds) {
  const PlanarLattice& lat = dec.lattice;
  std::vector<char> interior_edge(lat.ecount(), 0);
  for (int e : cover.interior_edges) interior_edge[e] = 1;

  std::map<int, int> exit_cut;  // inner vertex -> right cut edge (smallest)
  for (const CutEdge& ce : cover.cuts[static_cast<int>(Side::Right)])
    if (!exit_cut.count(ce.inner)) exit_cut.emplace(ce.inner, ce.edge);

  std::vector<int> parent(lat.vcount(), -2);
  std::vector<int> start_cut(lat.vcount(), -1);
  std::queue<int> q;
  for (const CutEdge& ce : cover.cuts[static_cast<int>(Side::Left)]) {
    if (parent[ce.inner] != -2) continue;
    parent[ce.inner] = -1;
    start_cut[ce.inner] = ce.edge;
    q.push(ce.inner);
  }
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w : lat.adj[v]) {
      const int e = lat.edge_id(v, w);
      if (!interior_edge[e] || !bonds.is_open(e)) continue;
      if (parent[w] != -2) continue;
      parent[w] = v;
      start_cut[w] = start_cut[v];
      auto hit = exit_cut.find(w);
      if (hit != exit_cut.end()) {
        std::vector<int> path;
        const auto& left_edge = lat.edges[start_cut[w]];
        const auto& right_edge = lat.edges[hit->second];
        for (int x = w; x != -1; x = parent[x]) path.push_back(x);
        std::reverse(path.begin(), path.end());
        const int b_left = rect_outer_of(lat, cover.rect, left_edge);
        const int b_right = rect_outer_of(lat, cover.rect, right_edge);
        path.insert(path.begin(), b_left);
        path.push_back(b_right);
        std::string why;
        if (validate_bond_lr_crossing(dec, cover, bonds, path, &why)) return path;
      }
      q.push(w);
    }
  }
  return std::nullopt;
}

bool validate_bond_lr_crossing(const CellDecomposition& dec, const RectangleCover& cover,
                               const BondConfig& bonds, const std::vector<int>& path,
                               std::string* why) {
  auto reject = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const PlanarLattice& lat = dec.lattice;
  const Rect& r = cover.rect;
  if (path.size() < 4) return reject("path shorter than 4 vertices");
  std::set<int> uniq(path.begin(), path.end());
  if (uniq.size() != path.size()) return reject("repeated vertex");
  for (size_t i = 0; i + 1 < path.size(); ++i)
    if (!lat.has_edge(path[i], path[i + 1])) return reject("consecutive vertices not adjacent");

  const auto sides = side_segments(r);
  auto crosses = [&](int a, int b, Side s) {
    const auto& [s1, s2] = sides[static_cast<int>(s)];
    return segments_properly_intersect(lat.pts[a], lat.pts[b], s1, s2);
  };
  if (!crosses(path[0], path[1], Side::Left)) return reject("first edge does not cut the left side");
  if (r.contains_closed(lat.pts[path[0]])) return reject("first vertex not exterior");
  const size_t m = path.size();
  if (!crosses(path[m - 2], path[m - 1], Side::Right))
    return reject("last edge does not cut the right side");
  if (r.contains_closed(lat.pts[path[m - 1]])) return reject("last vertex not exterior");
  for (size_t i = 1; i + 2 < m; ++i) {
    if (!r.contains_strict(lat.pts[path[i]]) || !r.contains_strict(lat.pts[path[i + 1]]))
      return reject("middle edge not interior");
    if (!bonds.is_open(lat.edge_id(path[i], path[i + 1]))) return reject("middle edge closed");
  }
  return true;
}

std::optional<std::vector<int>> find_dual_bond_td_crossing(const CellDecomposition& dec,
                                                           const RectangleCover& cover,
                                                           const DualLattice& dual,
                                                           const BondConfig& bonds) {
  if (!dual.valid()) fail(Errc::DualInvalid, "dual lattice invalid");
  std::vector<char> interior_edge(dec.lattice.ecount(), 0);
  for (int e : cover.interior_edges) interior_edge[e] = 1;

  // Dual adjacency restricted to edges crossing closed interior primal edges.
  std::vector<std::vector<int>> adj(dec.cell_count());
  for (const DualEdge& de : dual.dual_edges) {
    if (!interior_edge[de.primal_edge] || bonds.is_open(de.primal_edge)) continue;
    adj[de.c1].push_back(de.c2);
    adj[de.c2].push_back(de.c1);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  std::vector<int> parent(dec.cell_count(), -2);
  std::queue<int> q;
  for (int c = 0; c < dec.cell_count(); ++c)
    if (cover.cls[c] == CellClass::Top) {
      parent[c] = -1;
      q.push(c);
    }
  while (!q.empty()) {
    const int c = q.front();
    q.pop();
    for (int d : adj[c]) {
      if (parent[d] != -2) continue;
      parent[d] = c;
      if (cover.cls[d] == CellClass::Bottom) {
        std::vector<int> path;
        for (int x = d; x != -1; x = parent[x]) path.push_back(x);
        std::reverse(path.begin(), path.end());
        return path;
      }
      q.push(d);
    }
  }
  return std::nullopt;
}

bool validate_dual_bond_td_crossing(const CellDecomposition& dec, const RectangleCover& cover,
                                    const DualLattice& dual, const BondConfig& bonds,
                                    const std::vector<int>& path, std::string* why) {
  auto reject = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (path.size() < 2) return reject("fewer than two dual vertices");
  std::set<int> uniq(path.begin(), path.end());
  if (uniq.size() != path.size()) return reject("repeated dual vertex");
  if (cover.cls[path.front()] != CellClass::Top) return reject("first dual vertex not in a top cell");
  if (cover.cls[path.back()] != CellClass::Bottom)
    return reject("last dual vertex not in a bottom cell");

  std::map<std::pair<int, int>, int> crossed;
  for (const DualEdge& de : dual.dual_edges) crossed[{de.c1, de.c2}] = de.primal_edge;
  std::vector<char> interior_edge(dec.lattice.ecount(), 0);
  for (int e : cover.interior_edges) interior_edge[e] = 1;

  for (size_t i = 0; i + 1 < path.size(); ++i) {
    auto it = crossed.find(std::minmax(path[i], path[i + 1]));
    if (it == crossed.end()) return reject("consecutive dual vertices not adjacent");
    if (!interior_edge[it->second]) return reject("dual edge does not cross an interior edge");
    if (bonds.is_open(it->second)) return reject("dual edge crosses an open edge");
  }
  return true;
}

BondCrossingReport check_bond_duality(const CellDecomposition& dec, const RectangleCover& cover,
                                      const DualLattice& dual, const BondConfig& bonds) {
  BondCrossingReport rep;
  rep.w_lr = find_bond_lr_crossing(dec, cover, bonds);
  rep.lr = rep.w_lr.has_value();
  rep.w_td_dual = find_dual_bond_td_crossing(dec, cover, dual, bonds);
  rep.td_dual = rep.w_td_dual.has_value();
  if (rep.w_td_dual) {
    std::string why;
    if (!validate_dual_bond_td_crossing(dec, cover, dual, bonds, *rep.w_td_dual, &why))
      fail(Errc::Internal, "search returned an invalid dual witness: " + why);
  }
  return rep;
}

}  // namespace perc
