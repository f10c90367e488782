#include <algorithm>
#include <cstdio>
#include <sstream>

#include "perc/io.hpp"

namespace perc {

namespace {

struct Mapper {
  double x0, y1, scale, w, h;

  std::string px(double x) const {
    char b[48];
    std::snprintf(b, sizeof b, "%.3f", (x - x0) * scale + 20.0);
    return b;
  }
  std::string py(double y) const {
    char b[48];
    std::snprintf(b, sizeof b, "%.3f", (y1 - y) * scale + 20.0);
    return b;
  }
  std::string pt(const Point2& p) const { return px(p.x) + "," + py(p.y); }
  std::string len(double d) const {
    char b[48];
    std::snprintf(b, sizeof b, "%.3f", d * scale);
    return b;
  }
};

const char* class_fill(CellClass c) {
  switch (c) {
    case CellClass::Interior: return "#dce9f7";
    case CellClass::Left:
    case CellClass::Right:
    case CellClass::Top:
    case CellClass::Bottom: return "#e9f3dc";
    case CellClass::CornerTL:
    case CellClass::CornerTR:
    case CellClass::CornerBL:
    case CellClass::CornerBR: return "#f3e4dc";
    case CellClass::Outside: return "none";
  }
  return "none";
}

}  // namespace

std::string render_svg(const SceneSpec& scene) {
  if (scene.dec == nullptr) fail(Errc::InvalidSpec, "scene needs a decomposition");
  const CellDecomposition& dec = *scene.dec;
  const PlanarLattice& lat = dec.lattice;

  double x0 = lat.pts[0].x, x1 = x0, y0 = lat.pts[0].y, y1 = y0;
  for (const Point2& p : lat.pts) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const double span = std::max(std::max(x1 - x0, y1 - y0), 1e-9);
  Mapper m{x0, y1, 560.0 / span, (x1 - x0) * (560.0 / span) + 40.0,
           (y1 - y0) * (560.0 / span) + 40.0};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << m.px(x1) << "\" height=\""
     << m.py(y0) << "\" viewBox=\"0 0 " << m.px(x1) << ' ' << m.py(y0) << "\">\n";
  os << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"8\" refY=\"5\" "
        "markerWidth=\"5\" markerHeight=\"5\" orient=\"auto-start-reverse\">"
        "<path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#7a2048\"/></marker></defs>\n";

  // cells
  for (int c = 0; c < dec.cell_count(); ++c) {
    std::string fill = "#ffffff";
    if (scene.cover) fill = class_fill(scene.cover->cls[c]);
    if (scene.site && scene.site->is_occupied(c)) fill = "#f4b266";
    os << "<polygon points=\"";
    for (int v : dec.cells[c].boundary.v) os << m.pt(lat.pts[v]) << ' ';
    os << "\" fill=\"" << fill << "\" stroke=\"none\"/>\n";
  }
  // witness cells
  for (int c : scene.witness_cells) {
    os << "<polygon points=\"";
    for (int v : dec.cells[c].boundary.v) os << m.pt(lat.pts[v]) << ' ';
    os << "\" fill=\"#9fd49b\" stroke=\"none\"/>\n";
  }

  // lattice edges
  for (const auto& [a, b] : lat.edges)
    os << "<line x1=\"" << m.px(lat.pts[a].x) << "\" y1=\"" << m.py(lat.pts[a].y) << "\" x2=\""
       << m.px(lat.pts[b].x) << "\" y2=\"" << m.py(lat.pts[b].y)
       << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";

  // dual overlay
  if (scene.dual) {
    for (const DualEdge& de : scene.dual->dual_edges) {
      os << "<polyline points=\"" << m.pt(scene.dual->site[de.c1]) << ' ' << m.pt(de.mid) << ' '
         << m.pt(scene.dual->site[de.c2])
         << "\" fill=\"none\" stroke=\"#3a6ea5\" stroke-width=\"0.8\" stroke-dasharray=\"4 3\"/>\n";
    }
    for (int c = 0; c < dec.cell_count(); ++c)
      os << "<circle cx=\"" << m.px(scene.dual->site[c].x) << "\" cy=\""
         << m.py(scene.dual->site[c].y) << "\" r=\"2.2\" fill=\"#3a6ea5\"/>\n";
  }

  // highlighted dual paths
  if (scene.dual) {
    for (const auto& path : scene.dual_paths) {
      if (path.size() < 2) continue;
      os << "<polyline points=\"";
      const size_t n = path.size();
      for (size_t i = 0; i < n; ++i) {
        os << m.pt(scene.dual->site[path[i]]) << ' ';
        // route through the bend of the connecting dual edge
        const int a = path[i], b = path[(i + 1) % n];
        for (const DualEdge& de : scene.dual->dual_edges)
          if ((de.c1 == std::min(a, b)) && (de.c2 == std::max(a, b))) os << m.pt(de.mid) << ' ';
      }
      os << m.pt(scene.dual->site[path[0]])
         << "\" fill=\"none\" stroke=\"#1c4d91\" stroke-width=\"2.4\"/>\n";
    }
  }

  // boundary cycles
  for (const Cycle& c : scene.boundary_cycles) {
    os << "<polygon points=\"";
    for (int v : c.v) os << m.pt(lat.pts[v]) << ' ';
    os << "\" fill=\"none\" stroke=\"#b02a2a\" stroke-width=\"2.6\"/>\n";
  }

  // euler circuit arrows
  if (scene.euler_walk.size() >= 2) {
    for (size_t i = 0; i + 1 < scene.euler_walk.size(); ++i) {
      const Point2& a = lat.pts[scene.euler_walk[i]];
      const Point2& b = lat.pts[scene.euler_walk[i + 1]];
      os << "<line x1=\"" << m.px(a.x) << "\" y1=\"" << m.py(a.y) << "\" x2=\"" << m.px(b.x)
         << "\" y2=\"" << m.py(b.y)
         << "\" stroke=\"#7a2048\" stroke-width=\"1.6\" marker-end=\"url(#arrow)\"/>\n";
    }
  }

  // witness vertex path
  if (scene.witness_vertices.size() >= 2) {
    os << "<polyline points=\"";
    for (int v : scene.witness_vertices) os << m.pt(lat.pts[v]) << ' ';
    os << "\" fill=\"none\" stroke=\"#1f7a1f\" stroke-width=\"2.6\"/>\n";
  }

  // rectangle
  if (scene.cover) {
    const Rect& r = scene.cover->rect;
    os << "<rect x=\"" << m.px(r.x0) << "\" y=\"" << m.py(r.y1) << "\" width=\""
       << m.len(r.x1 - r.x0) << "\" height=\"" << m.len(r.y1 - r.y0)
       << "\" fill=\"none\" stroke=\"#222222\" stroke-width=\"1.8\" stroke-dasharray=\"7 4\"/>\n";
  }

  os << "</svg>\n";
  return os.str();
}

}  // namespace perc
