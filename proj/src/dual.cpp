#include "perc/dual.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace perc {

const char* dual_failure_name(DualFailureCode c) {
  switch (c) {
    case DualFailureCode::NotPlanar: return "DualNotPlanar";
    case DualFailureCode::NotConnected: return "DualNotConnected";
    case DualFailureCode::Acyclic: return "DualAcyclic";
    case DualFailureCode::Degenerate: return "DualDegenerate";
  }
  return "?";
}

std::vector<int> DualLattice::collapse(const Cycle& c) const {
  std::vector<int> out;
  for (int v : c.v)
    if (!is_bend(v)) out.push_back(v);
  return out;
}

DualLattice construct_dual(const CellDecomposition& dec) {
  DualLattice dual;
  dual.primal_cells = dec.cell_count();
  dual.site = dec.cell_point;

  // One dual edge per plus-adjacent pair; when a pair shares several primal
  // edges (a niceness violation) the lowest edge id fixes the bend point.
  std::map<std::pair<int, int>, int> pair_edge;
  for (int e = 0; e < dec.lattice.ecount(); ++e) {
    const auto& ec = dec.edge_cells[e];
    if (ec[0] < 0 || ec[1] < 0) continue;
    const auto key = std::minmax(ec[0], ec[1]);
    if (!pair_edge.count({key.first, key.second})) pair_edge[{key.first, key.second}] = e;
  }
  for (const auto& [pair, e] : pair_edge) {
    const auto& [a, b] = dec.lattice.edges[e];
    const Point2 mid{(dec.lattice.pts[a].x + dec.lattice.pts[b].x) / 2.0,
                     (dec.lattice.pts[a].y + dec.lattice.pts[b].y) / 2.0};
    dual.dual_edges.push_back({pair.first, pair.second, e, mid});
  }

  std::vector<std::pair<VertexId, Point2>> verts;
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int c = 0; c < dual.primal_cells; ++c) verts.push_back({c, dual.site[c]});
  for (size_t j = 0; j < dual.dual_edges.size(); ++j) {
    const VertexId mid_id = dual.primal_cells + static_cast<VertexId>(j);
    verts.push_back({mid_id, dual.dual_edges[j].mid});
    edges.push_back({dual.dual_edges[j].c1, mid_id});
    edges.push_back({mid_id, dual.dual_edges[j].c2});
  }

  try {
    if (dual.dual_edges.empty()) fail(Errc::Degenerate, "dual graph has no edges");
    PlanarLattice g = validate_lattice(verts, edges);
    dual.graph = std::move(g);
  } catch (const Error& err) {
    DualFailureCode code = DualFailureCode::Degenerate;
    switch (err.code()) {
      case Errc::NotPlanar: code = DualFailureCode::NotPlanar; break;
      case Errc::NotConnected: code = DualFailureCode::NotConnected; break;
      case Errc::BridgeEdge: code = DualFailureCode::Acyclic; break;
      default: code = DualFailureCode::Degenerate; break;
    }
    dual.failure = DualFailure{code, err.what()};
    return dual;
  }

  dual.cells = decompose_cells(dual.graph);
  dual.dual_cell_corners.resize(dual.cells.cell_count());
  for (int w = 0; w < dual.cells.cell_count(); ++w) {
    for (int v : dual.cells.cells[w].boundary.v)
      if (!dual.is_bend(v)) dual.dual_cell_corners[w].push_back(v);
    std::sort(dual.dual_cell_corners[w].begin(), dual.dual_cell_corners[w].end());
  }

  dual.vertex_dual_cell.assign(dec.lattice.vcount(), -1);
  for (int v = 0; v < dec.lattice.vcount(); ++v) {
    const Point2& p = dec.lattice.pts[v];
    for (int w = 0; w < dual.cells.cell_count(); ++w) {
      const auto poly = cycle_polygon(dual.graph, dual.cells.cells[w].boundary);
      if (classify_point(p, poly) == PointLoc::Inside) {
        dual.vertex_dual_cell[v] = w;
        break;
      }
    }
  }
  return dual;
}

// ---------------------------------------------------------------------------
// duality axioms

namespace {

std::string pair_witness(const CellDecomposition& dec, int a, int b) {
  return "cells " + dec.cell_label(a) + " and " + dec.cell_label(b);
}

std::vector<int> shared_vertices(const CellDecomposition& dec, int a, int b) {
  std::set<int> va(dec.cells[a].boundary.v.begin(), dec.cells[a].boundary.v.end());
  std::vector<int> out;
  for (int v : dec.cells[b].boundary.v)
    if (va.count(v)) out.push_back(v);
  return out;
}

std::vector<int> shared_edges(const CellDecomposition& dec, int a, int b) {
  std::vector<int> out;
  for (int e = 0; e < dec.lattice.ecount(); ++e) {
    const auto& ec = dec.edge_cells[e];
    if ((ec[0] == a && ec[1] == b) || (ec[0] == b && ec[1] == a)) out.push_back(e);
  }
  return out;
}

PropertyResult check_niceness(const CellDecomposition& dec) {
  for (int a = 0; a < dec.cell_count(); ++a) {
    for (int b : dec.plus_adj[a]) {
      if (b <= a) continue;
      const auto se = shared_edges(dec, a, b);
      const auto sv = shared_vertices(dec, a, b);
      if (se.size() != 1)
        return {false, pair_witness(dec, a, b) + " share " + std::to_string(se.size()) + " edges"};
      if (sv.size() != 2)
        return {false, pair_witness(dec, a, b) + " share an extra vertex"};
    }
  }
  return {};
}

// Samples of a two-segment polyline strictly between its endpoints.
std::vector<Point2> polyline_samples(const Point2& a, const Point2& m, const Point2& b) {
  auto mid = [](const Point2& p, const Point2& q) { return Point2{(p.x + q.x) / 2, (p.y + q.y) / 2}; };
  return {a, mid(a, m), m, mid(m, b), b};
}

PropertyResult check_interior_edge(const CellDecomposition& dec, const DualLattice& dual) {
  for (const DualEdge& de : dual.dual_edges) {
    const Cycle merged =
        merge_cycles(dec.lattice, dec.cells[de.c1].boundary, dec.cells[de.c2].boundary);
    const auto poly = cycle_polygon(dec.lattice, merged);
    for (const Point2& p : polyline_samples(dual.site[de.c1], de.mid, dual.site[de.c2])) {
      if (classify_point(p, poly) != PointLoc::Inside)
        return {false, "dual edge between " + pair_witness(dec, de.c1, de.c2) +
                           " leaves the merged cycle interior"};
    }
  }
  return {};
}

}  // namespace

DualityReport verify_duality_properties(const CellDecomposition& dec, const DualLattice& dual) {
  DualityReport rep;

  rep.a1 = check_niceness(dec);
  if (rep.a1.pass) rep.a2 = check_interior_edge(dec, dual);

  if (!dual.valid()) {
    rep.a3 = {false, std::string(dual_failure_name(dual.failure->code)) + ": " + dual.failure->detail};
    rep.a4 = {false, "dual lattice invalid"};
    rep.a5 = {false, "dual lattice invalid"};
    return rep;
  }

  // a3: the dual is a percolation lattice (validated in construct_dual) and
  // the primal is dual to it: every dual cell houses exactly one primal
  // vertex, and housed vertices are adjacent in G exactly when their dual
  // cells are plus adjacent.
  {
    std::vector<int> housed(dual.cells.cell_count(), 0);
    for (int v = 0; v < dec.lattice.vcount(); ++v)
      if (dual.vertex_dual_cell[v] >= 0) ++housed[dual.vertex_dual_cell[v]];
    for (int w = 0; w < dual.cells.cell_count(); ++w) {
      if (housed[w] != 1) {
        rep.a3 = {false, "dual cell " + std::to_string(w) + " houses " + std::to_string(housed[w]) +
                             " primal vertices"};
        break;
      }
    }
    if (rep.a3.pass) {
      std::vector<int> cell_of_vertex(dual.cells.cell_count(), -1);
      for (int v = 0; v < dec.lattice.vcount(); ++v)
        if (dual.vertex_dual_cell[v] >= 0) cell_of_vertex[dual.vertex_dual_cell[v]] = v;
      for (int v1 = 0; v1 < dec.lattice.vcount() && rep.a3.pass; ++v1) {
        const int w1 = dual.vertex_dual_cell[v1];
        if (w1 < 0) continue;
        for (int v2 = v1 + 1; v2 < dec.lattice.vcount(); ++v2) {
          const int w2 = dual.vertex_dual_cell[v2];
          if (w2 < 0) continue;
          const bool adj_primal = dec.lattice.has_edge(v1, v2);
          const bool adj_dual = dual.cells.cells_adjacent(w1, w2, AdjMode::Plus);
          if (adj_primal != adj_dual) {
            rep.a3 = {false, "adjacency mismatch at primal vertices " +
                                 std::to_string(dec.lattice.ids[v1]) + "," +
                                 std::to_string(dec.lattice.ids[v2])};
            break;
          }
        }
      }
    }
  }

  // a4: niceness of the dual decomposition, plus the interior-edge property
  // read back in the primal: a housed primal edge lies inside the merged
  // cycle of the two dual cells housing its endpoints.
  {
    for (int a = 0; a < dual.cells.cell_count() && rep.a4.pass; ++a) {
      for (int b : dual.cells.plus_adj[a]) {
        if (b <= a) continue;
        // shared full dual edges = shared bend vertices
        std::set<int> va(dual.cells.cells[a].boundary.v.begin(), dual.cells.cells[a].boundary.v.end());
        int shared_bend = 0, shared_real = 0;
        for (int v : dual.cells.cells[b].boundary.v) {
          if (!va.count(v)) continue;
          if (dual.is_bend(v))
            ++shared_bend;
          else
            ++shared_real;
        }
        if (shared_bend != 1 || shared_real != 2) {
          rep.a4 = {false, "dual cells " + std::to_string(a) + "," + std::to_string(b) +
                               " share " + std::to_string(shared_bend) + " dual edges and " +
                               std::to_string(shared_real) + " dual vertices"};
          break;
        }
      }
    }
    if (rep.a4.pass) {
      for (int e = 0; e < dec.lattice.ecount() && rep.a4.pass; ++e) {
        const auto& [v1, v2] = dec.lattice.edges[e];
        const int w1 = dual.vertex_dual_cell[v1];
        const int w2 = dual.vertex_dual_cell[v2];
        if (w1 < 0 || w2 < 0) continue;
        if (!dual.cells.cells_adjacent(w1, w2, AdjMode::Plus)) continue;  // a3 reports this
        const Cycle merged = merge_cycles(dual.graph, dual.cells.cells[w1].boundary,
                                          dual.cells.cells[w2].boundary);
        const auto poly = cycle_polygon(dual.graph, merged);
        const Point2& p1 = dec.lattice.pts[v1];
        const Point2& p2 = dec.lattice.pts[v2];
        for (const Point2& p :
             {p1, Point2{(p1.x + p2.x) / 2, (p1.y + p2.y) / 2}, p2}) {
          if (classify_point(p, poly) != PointLoc::Inside) {
            rep.a4 = {false, "primal edge (" + std::to_string(dec.lattice.ids[v1]) + "," +
                                 std::to_string(dec.lattice.ids[v2]) +
                                 ") leaves the merged dual-cell interior"};
            break;
          }
        }
      }
    }
  }

  // a5: every real corner z of a dual cell R(v) marks a primal cell Q(z)
  // having v as a vertex.
  {
    for (int w = 0; w < dual.cells.cell_count() && rep.a5.pass; ++w) {
      int v = -1;
      for (int u = 0; u < dec.lattice.vcount(); ++u)
        if (dual.vertex_dual_cell[u] == w) {
          v = u;
          break;
        }
      if (v < 0) continue;  // a3 reports unhoused dual cells
      for (int z : dual.dual_cell_corners[w]) {
        const auto& bz = dec.cells[z].boundary.v;
        if (std::find(bz.begin(), bz.end(), v) == bz.end()) {
          rep.a5 = {false, "dual cell of vertex " + std::to_string(dec.lattice.ids[v]) +
                               " has corner in cell " + dec.cell_label(z) +
                               " which misses that vertex"};
          break;
        }
      }
    }
  }
  return rep;
}

std::string DualityReport::summary() const {
  std::ostringstream os;
  auto line = [&](const char* name, const PropertyResult& r) {
    os << name << ": " << (r.pass ? "pass" : "FAIL") ;
    if (!r.pass) os << " (" << r.witness << ")";
    os << '\n';
  };
  line("a1", a1);
  line("a2", a2);
  line("a3", a3);
  line("a4", a4);
  line("a5", a5);
  return os.str();
}

// ---------------------------------------------------------------------------
// surrounding cycles

namespace {

void require_valid_dual(const DualLattice& dual) {
  if (!dual.valid())
    fail(Errc::DualInvalid,
         std::string(dual_failure_name(dual.failure->code)) + ": " + dual.failure->detail);
}

std::vector<int> component_vertices(const CellDecomposition& dec, const CellComponent& comp) {
  std::set<int> vs;
  for (int c : comp.cells)
    for (int v : dec.cells[c].boundary.v) vs.insert(v);
  return {vs.begin(), vs.end()};
}

// Vacant-by-maximality cells star-adjacent to the component.
std::vector<char> qualifying_cells(const CellDecomposition& dec, const CellComponent& comp) {
  std::vector<char> q(dec.cell_count(), 0);
  for (int c : comp.cells)
    for (int d : dec.star_adj[c])
      if (!comp.contains(d)) q[d] = 1;
  return q;
}

DualCycle to_dual_cycle(const DualLattice& dual, Cycle subdivided) {
  DualCycle out;
  out.cells = dual.collapse(subdivided);
  out.subdivided = std::move(subdivided);
  return out;
}

}  // namespace

DualCycle vacant_dual_seed_cycle(const CellDecomposition& dec, const DualLattice& dual,
                                 const CellComponent& comp) {
  require_valid_dual(dual);
  for (int v : component_vertices(dec, comp))
    if (dual.vertex_dual_cell[v] < 0)
      fail(Errc::HypothesisViolated, "component vertex " + std::to_string(dec.lattice.ids[v]) +
                                         " is not strictly inside any dual cell");

  const OutermostBoundary ob = outermost_boundary_star(dec, comp);
  std::set<int> blob;
  for (const Cycle& c : ob.cycles)
    for (int v : c.v) blob.insert(dual.vertex_dual_cell[v]);

  SiteConfig dual_cfg;
  dual_cfg.occupied.assign(dual.cells.cell_count(), 0);
  for (int w : blob) dual_cfg.occupied[w] = 1;
  dual_cfg.origin = *blob.begin();

  const CellComponent blob_comp = component(dual.cells, dual_cfg, AdjMode::Plus);
  if (blob_comp.size() != static_cast<int>(blob.size()))
    fail(Errc::PreconditionViolated,
         "boundary dual cells are not plus-connected; duality axioms do not hold here");

  return to_dual_cycle(dual, outermost_boundary_plus(dual.cells, blob_comp));
}

DualCycle vacant_dual_cycle_around_star(const CellDecomposition& dec, const DualLattice& dual,
                                        const CellComponent& comp) {
  // The constructive step both validates the hypotheses and guarantees that
  // a qualifying cycle exists.
  const DualCycle seed = vacant_dual_seed_cycle(dec, dual, comp);

  // Any qualifying cycle is a cycle of the dual subgraph induced by vacant
  // star-adjacent cells, and every cycle of that subgraph lies inside the
  // outer boundary of its biconnected block; nest-maximal block boundaries
  // containing the component therefore realize the merge of all qualifying
  // cycles.
  const std::vector<char> qual = qualifying_cells(dec, comp);
  std::vector<std::pair<int, int>> h_edges;
  for (const DualEdge& de : dual.dual_edges)
    if (qual[de.c1] && qual[de.c2]) h_edges.push_back({de.c1, de.c2});

  // Work in the subdivided graph: both segments of each kept dual edge.
  auto subdivided_edges = [&](const std::vector<std::pair<int, int>>& pairs) {
    std::vector<std::pair<int, int>> out;
    std::map<std::pair<int, int>, int> dual_edge_index;
    for (size_t j = 0; j < dual.dual_edges.size(); ++j)
      dual_edge_index[{dual.dual_edges[j].c1, dual.dual_edges[j].c2}] = static_cast<int>(j);
    for (const auto& [a, b] : pairs) {
      const int j = dual_edge_index.at(std::minmax(a, b));
      const int bend = dual.primal_cells + j;
      out.push_back({a, bend});
      out.push_back({bend, b});
    }
    return out;
  };

  std::optional<Cycle> best;
  double best_area = -1.0;
  for (const auto& blk : biconnected_blocks(h_edges)) {
    if (blk.size() < 3) continue;
    const Cycle cand = subgraph_outer_boundary(dual.graph, subdivided_edges(blk));
    const auto poly = cycle_polygon(dual.graph, cand);
    bool contains = true;
    for (int c : comp.cells)
      if (classify_point(dec.cell_point[c], poly) != PointLoc::Inside) {
        contains = false;
        break;
      }
    if (!contains) continue;
    const double area = std::abs(polygon_signed_area(poly));
    if (area > best_area) {
      best_area = area;
      best = cand;
    }
  }
  if (!best) return seed;  // the seed is itself the unique qualifying cycle
  return to_dual_cycle(dual, *best);
}

std::vector<int> vacant_cell_cycle_around_plus(const CellDecomposition& dec, const SiteConfig& cfg,
                                               const CellComponent& comp) {
  if (comp.mode != AdjMode::Plus) fail(Errc::PreconditionViolated, "component is not plus-connected");
  const Cycle boundary = outermost_boundary_plus(dec, comp);
  CycleClassifier cls(dec.lattice, boundary);

  std::vector<int> ring;
  std::vector<char> taken(dec.cell_count(), 0);
  const int n = boundary.size();
  for (int i = 0; i < n; ++i) {
    const int a = boundary.v[i];
    const int b = boundary.v[(i + 1) % n];
    const int e = dec.lattice.edge_id(a, b);
    const auto& ec = dec.edge_cells[e];
    if (ec[1] < 0)
      fail(Errc::MissingVacantNeighbor, "boundary edge (" + std::to_string(dec.lattice.ids[a]) +
                                            "," + std::to_string(dec.lattice.ids[b]) +
                                            ") has no outer cell");
    const bool first_inside = cls.cell_in_closed_interior(dec.cells[ec[0]]);
    const int outer = first_inside ? ec[1] : ec[0];
    if (cfg.is_occupied(outer))
      fail(Errc::MissingVacantNeighbor,
           "outer cell " + dec.cell_label(outer) + " is occupied; component is not maximal");
    if (!taken[outer]) {
      taken[outer] = 1;
      ring.push_back(outer);
    }
  }
  return ring;
}

}  // namespace perc
