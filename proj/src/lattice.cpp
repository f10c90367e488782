#include "perc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace perc {

Cycle canonical_cycle(std::vector<int> walk, std::span<const Point2> pts) {
  if (walk.size() < 3) fail(Errc::Internal, "cycle shorter than 3");
  if (walk_signed_area(walk, pts) < 0) std::reverse(walk.begin(), walk.end());
  auto mn = std::min_element(walk.begin(), walk.end());
  std::rotate(walk.begin(), mn, walk.end());
  return Cycle{std::move(walk)};
}

std::vector<Point2> cycle_polygon(const PlanarLattice& lat, const Cycle& cyc) {
  std::vector<Point2> poly;
  poly.reserve(cyc.v.size());
  for (int v : cyc.v) poly.push_back(lat.pts[v]);
  return poly;
}

double cycle_area(const PlanarLattice& lat, const Cycle& cyc) {
  return polygon_signed_area(cycle_polygon(lat, cyc));
}

// ---------------------------------------------------------------------------
// validate_lattice

namespace {

void check_connected(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n == 0) fail(Errc::Degenerate, "empty vertex set");
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int cnt = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++cnt;
        q.push(w);
      }
  }
  if (cnt != n) {
    for (int v = 0; v < n; ++v)
      if (!seen[v]) fail(Errc::NotConnected, "vertex " + std::to_string(v) + " unreachable from 0");
  }
}

void check_planar_drawing(const PlanarLattice& lat) {
  struct Item {
    double xmin, xmax;
    int e;
  };
  std::vector<Item> items;
  items.reserve(lat.edges.size());
  for (int e = 0; e < lat.ecount(); ++e) {
    const auto& [a, b] = lat.edges[e];
    items.push_back({std::min(lat.pts[a].x, lat.pts[b].x), std::max(lat.pts[a].x, lat.pts[b].x), e});
  }
  std::sort(items.begin(), items.end(), [](const Item& p, const Item& q) { return p.xmin < q.xmin; });
  for (size_t i = 0; i < items.size(); ++i) {
    for (size_t j = i + 1; j < items.size(); ++j) {
      if (items[j].xmin > items[i].xmax) break;
      const auto& [a1, a2] = lat.edges[items[i].e];
      const auto& [b1, b2] = lat.edges[items[j].e];
      if (segments_properly_intersect(lat.pts[a1], lat.pts[a2], lat.pts[b1], lat.pts[b2]))
        fail(Errc::NotPlanar, "edges (" + std::to_string(a1) + "," + std::to_string(a2) + ") and (" +
                                  std::to_string(b1) + "," + std::to_string(b2) + ") intersect");
    }
  }
}

// Iterative DFS low-link bridge detection.
void check_bridgeless(const PlanarLattice& lat) {
  const int n = lat.vcount();
  std::vector<int> disc(n, -1), low(n, 0), parent_edge(n, -1);
  int timer = 0;
  for (int root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    std::vector<std::pair<int, size_t>> stack{{root, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      auto& [v, it] = stack.back();
      if (it < lat.adj[v].size()) {
        const int w = lat.adj[v][it++];
        const int eid = lat.edge_id(v, w);
        if (eid == parent_edge[v]) continue;
        if (disc[w] >= 0) {
          low[v] = std::min(low[v], disc[w]);
        } else {
          disc[w] = low[w] = timer++;
          parent_edge[w] = eid;
          stack.emplace_back(w, 0);
        }
      } else {
        stack.pop_back();
        if (!stack.empty()) {
          const int p = stack.back().first;
          low[p] = std::min(low[p], low[v]);
          if (low[v] > disc[p])
            fail(Errc::BridgeEdge,
                 "edge (" + std::to_string(p) + "," + std::to_string(v) + ") lies on no cycle");
        }
      }
    }
  }
}

}  // namespace

PlanarLattice validate_lattice(const std::vector<std::pair<VertexId, Point2>>& vertices,
                               const std::vector<std::pair<VertexId, VertexId>>& edges) {
  PlanarLattice lat;
  if (vertices.empty()) fail(Errc::Degenerate, "no vertices");

  std::vector<std::pair<VertexId, Point2>> vs(vertices);
  std::sort(vs.begin(), vs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 0; i + 1 < vs.size(); ++i)
    if (vs[i].first == vs[i + 1].first)
      fail(Errc::Degenerate, "duplicate vertex id " + std::to_string(vs[i].first));
  for (const auto& [id, p] : vs) {
    if (!is_finite(p)) fail(Errc::Degenerate, "non-finite coordinates at vertex " + std::to_string(id));
    lat.index_of_id.emplace(id, static_cast<int>(lat.ids.size()));
    lat.ids.push_back(id);
    lat.pts.push_back(p);
  }
  for (size_t i = 0; i < vs.size(); ++i)
    for (size_t j = i + 1; j < vs.size(); ++j)
      if (vs[i].second == vs[j].second)
        fail(Errc::Degenerate, "vertices " + std::to_string(vs[i].first) + " and " +
                                   std::to_string(vs[j].first) + " coincide");

  for (const auto& [ia, ib] : edges) {
    auto a = lat.index_of_id.find(ia);
    auto b = lat.index_of_id.find(ib);
    if (a == lat.index_of_id.end() || b == lat.index_of_id.end())
      fail(Errc::Degenerate, "edge references unknown vertex id");
    if (a->second == b->second) fail(Errc::Degenerate, "loop edge at id " + std::to_string(ia));
    lat.edges.emplace_back(std::min(a->second, b->second), std::max(a->second, b->second));
  }
  std::sort(lat.edges.begin(), lat.edges.end());
  if (std::adjacent_find(lat.edges.begin(), lat.edges.end()) != lat.edges.end())
    fail(Errc::Degenerate, "duplicate edge in input");
  if (lat.edges.empty()) fail(Errc::Degenerate, "no edges");

  lat.adj.assign(lat.vcount(), {});
  for (int e = 0; e < lat.ecount(); ++e) {
    lat.edge_index.emplace(lat.edges[e], e);
    lat.adj[lat.edges[e].first].push_back(lat.edges[e].second);
    lat.adj[lat.edges[e].second].push_back(lat.edges[e].first);
  }
  for (auto& a : lat.adj) std::sort(a.begin(), a.end());

  check_connected(lat.adj);
  check_planar_drawing(lat);
  lat.rot = build_rotation_system(lat.pts, lat.edges);
  check_bridgeless(lat);

  // Every bounded face must be a simple cycle; a cut vertex whose blocks nest
  // gives a bounded face walk with a repeated vertex, and then no cell
  // decomposition exists.
  const FaceSet fs = trace_faces(lat.rot, lat.pts);
  for (size_t f = 0; f < fs.faces.size(); ++f) {
    if (static_cast<int>(f) == fs.outer) continue;
    std::vector<int> w(fs.faces[f]);
    std::sort(w.begin(), w.end());
    if (std::adjacent_find(w.begin(), w.end()) != w.end())
      fail(Errc::Degenerate, "bounded face is not a simple cycle (nested component at a cut vertex)");
  }
  return lat;
}

// ---------------------------------------------------------------------------
// decompose_cells

bool CellDecomposition::is_unicellular(int a, int b) const {
  const int e = lattice.edge_id(a, b);
  if (e < 0)
    fail(Errc::UnknownEdge, "(" + std::to_string(a) + "," + std::to_string(b) + ") is not an edge");
  return edge_cells[e][1] < 0;
}

bool CellDecomposition::cells_adjacent(int a, int b, AdjMode mode) const {
  if (a < 0 || b < 0 || a >= cell_count() || b >= cell_count())
    fail(Errc::UnknownCell, "cell index out of range");
  if (a == b) fail(Errc::CellsNotDistinct, "adjacency requires distinct cells");
  const auto& nb = (mode == AdjMode::Star) ? star_adj[a] : plus_adj[a];
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::string CellDecomposition::cell_label(int c) const {
  if (c < 0 || c >= cell_count()) fail(Errc::UnknownCell, "cell index out of range");
  std::ostringstream os;
  const auto& b = cells[c].boundary.v;
  for (size_t i = 0; i < b.size(); ++i) {
    if (i) os << '-';
    os << lattice.ids[b[i]];
  }
  return os.str();
}

std::optional<int> CellDecomposition::cell_by_label(const std::string& label) const {
  for (int c = 0; c < cell_count(); ++c)
    if (cell_label(c) == label) return c;
  return std::nullopt;
}

CellDecomposition decompose_cells(const PlanarLattice& lat) {
  CellDecomposition dec;
  dec.lattice = lat;
  const auto& l = dec.lattice;

  const FaceSet fs = trace_faces(l.rot, l.pts);
  for (size_t f = 0; f < fs.faces.size(); ++f) {
    if (static_cast<int>(f) == fs.outer) continue;
    Cell cell;
    cell.boundary = canonical_cycle(fs.faces[f], l.pts);
    cell.area = cycle_area(l, cell.boundary);
    dec.cells.push_back(std::move(cell));
  }
  std::sort(dec.cells.begin(), dec.cells.end(),
            [](const Cell& a, const Cell& b) { return a.boundary.v < b.boundary.v; });

  const int T = dec.cell_count();
  dec.cell_point.reserve(T);
  for (const Cell& c : dec.cells) dec.cell_point.push_back(polygon_interior_point(cycle_polygon(l, c.boundary)));

  dec.edge_cells.assign(l.ecount(), {-1, -1});
  dec.vertex_cells.assign(l.vcount(), {});
  for (int c = 0; c < T; ++c) {
    const auto& b = dec.cells[c].boundary.v;
    const int n = static_cast<int>(b.size());
    for (int i = 0; i < n; ++i) {
      dec.vertex_cells[b[i]].push_back(c);
      const int e = l.edge_id(b[i], b[(i + 1) % n]);
      if (e < 0) fail(Errc::Internal, "cell boundary uses a non-edge");
      auto& ec = dec.edge_cells[e];
      if (ec[0] < 0)
        ec[0] = c;
      else if (ec[1] < 0)
        ec[1] = c;
      else
        fail(Errc::Internal, "edge on more than two cells");
    }
  }
  for (auto& vc : dec.vertex_cells) std::sort(vc.begin(), vc.end());

  std::vector<std::set<int>> star(T), plus(T);
  for (const auto& ec : dec.edge_cells) {
    if (ec[0] >= 0 && ec[1] >= 0) {
      plus[ec[0]].insert(ec[1]);
      plus[ec[1]].insert(ec[0]);
    }
  }
  for (const auto& vc : dec.vertex_cells) {
    for (size_t i = 0; i < vc.size(); ++i)
      for (size_t j = i + 1; j < vc.size(); ++j) {
        star[vc[i]].insert(vc[j]);
        star[vc[j]].insert(vc[i]);
      }
  }
  dec.star_adj.resize(T);
  dec.plus_adj.resize(T);
  for (int c = 0; c < T; ++c) {
    dec.star_adj[c].assign(star[c].begin(), star[c].end());
    dec.plus_adj[c].assign(plus[c].begin(), plus[c].end());
  }
  return dec;
}

// ---------------------------------------------------------------------------
// CycleClassifier

CycleClassifier::CycleClassifier(const PlanarLattice& lat, const Cycle& cyc)
    : lat_(lat), cyc_(cyc), poly_(cycle_polygon(lat, cyc)) {
  for (int i = 0; i < cyc.size(); ++i) pos_.emplace(cyc.v[i], i);
}

PointLoc CycleClassifier::vertex_loc(int v) const {
  if (pos_.count(v)) return PointLoc::Boundary;
  auto it = cache_.find(v);
  if (it != cache_.end()) return it->second;
  // A lattice vertex never lies on the open part of another edge, so the
  // crossing test is exact here.
  const Point2& p = lat_.pts[v];
  bool in = false;
  const size_t n = poly_.size();
  for (size_t i = 0; i < n; ++i) {
    const Point2& a = poly_[i];
    const Point2& b = poly_[(i + 1) % n];
    if (a.y <= p.y) {
      if (b.y > p.y && orient(a, b, p) > 0) in = !in;
    } else {
      if (b.y <= p.y && orient(a, b, p) < 0) in = !in;
    }
  }
  const PointLoc loc = in ? PointLoc::Inside : PointLoc::Outside;
  cache_.emplace(v, loc);
  return loc;
}

EdgeSide CycleClassifier::edge_side(int a, int b) const {
  auto ia = pos_.find(a);
  auto ib = pos_.find(b);
  const int n = cyc_.size();
  if (ia != pos_.end() && ib != pos_.end()) {
    const int d = std::abs(ia->second - ib->second);
    if (d == 1 || d == n - 1) return EdgeSide::On;
    // Chord between two cycle vertices: decide by the interior wedge at `a`.
    const int i = ia->second;
    const int prev = cyc_.v[(i + n - 1) % n];
    const int next = cyc_.v[(i + 1) % n];
    const bool inside = direction_in_open_wedge(lat_.pts[a], lat_.pts[next], lat_.pts[prev], lat_.pts[b]);
    return inside ? EdgeSide::Inside : EdgeSide::Outside;
  }
  const PointLoc la = vertex_loc(a);
  const PointLoc lb = vertex_loc(b);
  if (la == PointLoc::Outside || lb == PointLoc::Outside) return EdgeSide::Outside;
  return EdgeSide::Inside;
}

bool CycleClassifier::cell_in_closed_interior(const Cell& cell) const {
  const auto& b = cell.boundary.v;
  const int n = static_cast<int>(b.size());
  bool all_on = true;
  for (int i = 0; i < n; ++i) {
    const EdgeSide s = edge_side(b[i], b[(i + 1) % n]);
    if (s == EdgeSide::Outside) return false;
    if (s != EdgeSide::On) all_on = false;
  }
  (void)all_on;  // all-on means the cell equals the cycle: contained
  return true;
}

// ---------------------------------------------------------------------------
// subgraph boundaries, blocks, merging

namespace {

// Restriction of the host rotation system to a subgraph (same cyclic order).
RotationSystem restrict_rotation(const PlanarLattice& lat,
                                 const std::vector<std::pair<int, int>>& sub_edges) {
  RotationSystem rot;
  rot.order.assign(lat.vcount(), {});
  rot.pos.assign(lat.vcount(), {});
  std::vector<std::set<int>> nb(lat.vcount());
  for (const auto& [a, b] : sub_edges) {
    nb[a].insert(b);
    nb[b].insert(a);
  }
  for (int v = 0; v < lat.vcount(); ++v) {
    if (nb[v].empty()) continue;
    for (int u : lat.rot.order[v])
      if (nb[v].count(u)) rot.order[v].push_back(u);
    for (size_t k = 0; k < rot.order[v].size(); ++k) rot.pos[v].emplace(rot.order[v][k], static_cast<int>(k));
  }
  return rot;
}

}  // namespace

Cycle subgraph_outer_boundary(const PlanarLattice& lat,
                              const std::vector<std::pair<int, int>>& sub_edges) {
  if (sub_edges.empty()) fail(Errc::Internal, "empty subgraph");
  const RotationSystem rot = restrict_rotation(lat, sub_edges);
  const FaceSet fs = trace_faces(rot, lat.pts);
  if (fs.outer < 0) fail(Errc::Internal, "no outer face");
  std::vector<int> walk = fs.faces[fs.outer];

  std::vector<int> sorted(walk);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail(Errc::Internal, "outer walk of subgraph is not simple");

  std::reverse(walk.begin(), walk.end());
  return canonical_cycle(std::move(walk), lat.pts);
}

std::vector<std::vector<std::pair<int, int>>> biconnected_blocks(
    const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<std::pair<int, int>>> blocks;
  if (edges.empty()) return blocks;

  int n = 0;
  for (const auto& [a, b] : edges) n = std::max({n, a + 1, b + 1});
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge idx)
  for (size_t e = 0; e < edges.size(); ++e) {
    adj[edges[e].first].emplace_back(edges[e].second, static_cast<int>(e));
    adj[edges[e].second].emplace_back(edges[e].first, static_cast<int>(e));
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<char> used(edges.size(), 0);
  std::vector<int> estack;
  int timer = 0;

  struct Frame {
    int v;
    int parent_edge;
    size_t it;
  };

  for (int root = 0; root < n; ++root) {
    if (disc[root] >= 0 || adj[root].empty()) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.it < adj[f.v].size()) {
        auto [w, e] = adj[f.v][f.it++];
        if (e == f.parent_edge) continue;
        if (disc[w] < 0) {
          estack.push_back(e);
          used[e] = 1;
          disc[w] = low[w] = timer++;
          stack.push_back({w, e, 0});
        } else {
          if (!used[e]) {
            estack.push_back(e);
            used[e] = 1;
          }
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        const int v = f.v;
        const int pe = f.parent_edge;
        stack.pop_back();
        if (stack.empty()) continue;
        const int p = stack.back().v;
        low[p] = std::min(low[p], low[v]);
        if (low[v] >= disc[p]) {
          // `pe` closes a block.
          std::vector<std::pair<int, int>> blk;
          while (true) {
            const int e = estack.back();
            estack.pop_back();
            blk.push_back(edges[e]);
            if (e == pe) break;
          }
          blocks.push_back(std::move(blk));
        }
      }
    }
  }
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

Cycle merge_cycles(const PlanarLattice& lat, const Cycle& c, const Cycle& d) {
  auto check = [&](const Cycle& cyc) {
    const int n = cyc.size();
    for (int i = 0; i < n; ++i)
      if (!lat.has_edge(cyc.v[i], cyc.v[(i + 1) % n]))
        fail(Errc::UnknownEdge, "cycle uses a non-lattice edge");
  };
  check(c);
  check(d);

  std::set<int> cv(c.v.begin(), c.v.end());
  int shared = 0;
  for (int v : d.v) shared += cv.count(v) ? 1 : 0;
  if (shared <= 1)
    fail(Errc::TooFewSharedVertices,
         "cycles share " + std::to_string(shared) + " vertex(es); need at least 2");

  std::set<std::pair<int, int>> es;
  auto add = [&](const Cycle& cyc) {
    const int n = cyc.size();
    for (int i = 0; i < n; ++i) {
      int a = cyc.v[i], b = cyc.v[(i + 1) % n];
      es.emplace(std::min(a, b), std::max(a, b));
    }
  };
  add(c);
  add(d);
  return subgraph_outer_boundary(lat, {es.begin(), es.end()});
}

// ---------------------------------------------------------------------------
// shells

ShellSet shell_cycles(const CellDecomposition& dec) {
  const int T = dec.cell_count();
  ShellSet out;
  out.cell_shell.assign(T, -1);

  for (int seed = 0; seed < T; ++seed) {
    if (out.cell_shell[seed] >= 0) continue;
    Cycle shell = dec.cells[seed].boundary;
    while (true) {
      CycleClassifier cls(dec.lattice, shell);
      int pick = -1;
      for (int c = 0; c < T && pick < 0; ++c) {
        if (out.cell_shell[c] >= 0 || c == seed) continue;
        if (cls.cell_in_closed_interior(dec.cells[c])) continue;
        // exterior cell sharing an edge with the current shell cycle
        const auto& b = dec.cells[c].boundary.v;
        const int n = static_cast<int>(b.size());
        for (int i = 0; i < n; ++i) {
          if (cls.edge_side(b[i], b[(i + 1) % n]) == EdgeSide::On) {
            pick = c;
            break;
          }
        }
      }
      if (pick < 0) break;
      shell = merge_cycles(dec.lattice, shell, dec.cells[pick].boundary);
    }
    const int sid = static_cast<int>(out.shells.size());
    CycleClassifier cls(dec.lattice, shell);
    for (int c = 0; c < T; ++c) {
      if (out.cell_shell[c] >= 0) continue;
      if (cls.cell_in_closed_interior(dec.cells[c])) out.cell_shell[c] = sid;
    }
    if (out.cell_shell[seed] != sid) fail(Errc::Internal, "seed cell escaped its shell");
    out.shells.push_back(std::move(shell));
  }
  return out;
}

}  // namespace perc
