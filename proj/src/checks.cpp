#include "perc/checks.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace perc {

namespace {

std::pair<int, int> norm_edge(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

std::set<std::pair<int, int>> cycle_edge_set(const Cycle& c) {
  std::set<std::pair<int, int>> es;
  const int n = c.size();
  for (int i = 0; i < n; ++i) es.insert(norm_edge(c.v[i], c.v[(i + 1) % n]));
  return es;
}

bool is_boundary_edge(const CellDecomposition& dec, const SiteConfig& cfg, int e) {
  const auto& ec = dec.edge_cells[e];
  if (ec[1] < 0) return true;  // unicellular
  return !cfg.is_occupied(ec[0]) || !cfg.is_occupied(ec[1]);
}

}  // namespace

std::vector<std::string> verify_star_boundary(const CellDecomposition& dec, const SiteConfig& cfg,
                                              const CellComponent& comp,
                                              const OutermostBoundary& ob) {
  std::vector<std::string> bad;
  const PlanarLattice& lat = dec.lattice;
  const auto& cycles = ob.cycles;
  if (cycles.empty()) {
    bad.push_back("no boundary cycles");
    return bad;
  }

  std::vector<CycleClassifier> cls;
  cls.reserve(cycles.size());
  for (const Cycle& c : cycles) cls.emplace_back(lat, c);

  // (iii) pairwise: at most one shared vertex, disjoint interiors.
  for (size_t i = 0; i < cycles.size(); ++i) {
    for (size_t j = i + 1; j < cycles.size(); ++j) {
      std::set<int> vi(cycles[i].v.begin(), cycles[i].v.end());
      int shared = 0;
      for (int v : cycles[j].v) shared += vi.count(v) ? 1 : 0;
      if (shared > 1) bad.push_back("cycles share more than one vertex");
      for (int v : cycles[j].v)
        if (cls[i].vertex_loc(v) == PointLoc::Inside) {
          bad.push_back("cycle vertex inside another cycle");
          break;
        }
      for (int v : cycles[i].v)
        if (cls[j].vertex_loc(v) == PointLoc::Inside) {
          bad.push_back("cycle vertex inside another cycle");
          break;
        }
    }
  }

  // (ii) the union of cycles is connected.
  {
    std::map<int, std::vector<int>> adj;
    for (const Cycle& c : cycles) {
      const int n = c.size();
      for (int i = 0; i < n; ++i) {
        adj[c.v[i]].push_back(c.v[(i + 1) % n]);
        adj[c.v[(i + 1) % n]].push_back(c.v[i]);
      }
    }
    std::set<int> seen;
    std::queue<int> q;
    q.push(adj.begin()->first);
    seen.insert(adj.begin()->first);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : adj[v])
        if (seen.insert(w).second) q.push(w);
    }
    if (seen.size() != adj.size()) bad.push_back("boundary cycle union is not connected");
  }

  // (iv) every member cell lies in exactly one cycle's closed interior.
  for (int c : comp.cells) {
    int host = 0;
    for (const auto& k : cls) host += k.cell_in_closed_interior(dec.cells[c]) ? 1 : 0;
    if (host != 1)
      bad.push_back("member cell " + dec.cell_label(c) + " inside " + std::to_string(host) +
                    " cycles");
  }

  // (i) + (v) over the component graph edges.
  std::vector<std::set<std::pair<int, int>>> on(cycles.size());
  for (size_t i = 0; i < cycles.size(); ++i) on[i] = cycle_edge_set(cycles[i]);
  for (const auto& [a, b] : component_graph_edges(dec, comp)) {
    int host = -1;
    for (size_t i = 0; i < cycles.size(); ++i)
      if (on[i].count({a, b})) {
        host = static_cast<int>(i);
        break;
      }
    if (host < 0) {
      bool inside = false;
      for (const auto& k : cls)
        if (k.edge_side(a, b) == EdgeSide::Inside) {
          inside = true;
          break;
        }
      if (!inside)
        bad.push_back("component edge (" + std::to_string(lat.ids[a]) + "," +
                      std::to_string(lat.ids[b]) + ") neither on nor inside a cycle");
      continue;
    }
    // a returned edge: never strictly inside another cycle
    for (size_t i = 0; i < cycles.size(); ++i)
      if (static_cast<int>(i) != host && cls[i].edge_side(a, b) == EdgeSide::Inside)
        bad.push_back("cycle edge strictly inside another cycle");
    const int e = lat.edge_id(a, b);
    if (!is_boundary_edge(dec, cfg, e)) {
      bad.push_back("cycle edge (" + std::to_string(lat.ids[a]) + "," + std::to_string(lat.ids[b]) +
                    ") is not a boundary edge");
      continue;
    }
    const auto& ec = dec.edge_cells[e];
    bool occupied_inside = false;
    for (int cc : ec) {
      if (cc < 0) continue;
      if (comp.contains(cc) && cls[host].cell_in_closed_interior(dec.cells[cc]))
        occupied_inside = true;
    }
    if (!occupied_inside) bad.push_back("cycle edge lacks an occupied member cell inside");
    if (ec[1] >= 0) {
      const int other = comp.contains(ec[0]) ? ec[1] : ec[0];
      if (cfg.is_occupied(other)) {
        bad.push_back("outer cell of a boundary edge is occupied");
      } else {
        for (const auto& k : cls)
          if (k.cell_in_closed_interior(dec.cells[other]))
            bad.push_back("vacant cell " + dec.cell_label(other) +
                          " of a boundary edge lies inside a cycle");
      }
    }
  }
  return bad;
}

std::vector<std::string> verify_plus_boundary(const CellDecomposition& dec, const SiteConfig& cfg,
                                              const CellComponent& comp, const Cycle& boundary) {
  std::vector<std::string> bad;
  const PlanarLattice& lat = dec.lattice;
  CycleClassifier cls(lat, boundary);

  for (int c : comp.cells)
    if (!cls.cell_in_closed_interior(dec.cells[c]))
      bad.push_back("member cell " + dec.cell_label(c) + " outside the boundary");

  const int n = boundary.size();
  for (int i = 0; i < n; ++i) {
    const int a = boundary.v[i], b = boundary.v[(i + 1) % n];
    const int e = lat.edge_id(a, b);
    if (e < 0) {
      bad.push_back("boundary uses a non-edge");
      continue;
    }
    const auto& ec = dec.edge_cells[e];
    bool occupied_inside = false;
    for (int cc : ec)
      if (cc >= 0 && comp.contains(cc) && cls.cell_in_closed_interior(dec.cells[cc]))
        occupied_inside = true;
    if (!occupied_inside) bad.push_back("boundary edge lacks an occupied member inside");
    if (ec[1] >= 0) {
      const int other = comp.contains(ec[0]) ? ec[1] : ec[0];
      if (cfg.is_occupied(other))
        bad.push_back("outer cell of a boundary edge is occupied");
      else if (cls.cell_in_closed_interior(dec.cells[other]))
        bad.push_back("vacant neighbor cell lies inside the boundary");
    }
  }
  return bad;
}

std::vector<std::string> verify_euler_circuit(const CellDecomposition& dec,
                                              const OutermostBoundary& ob,
                                              const std::vector<int>& walk) {
  std::vector<std::string> bad;
  if (walk.size() < 2 || walk.front() != walk.back()) {
    bad.push_back("circuit is not closed");
    return bad;
  }
  std::map<std::pair<int, int>, int> need;
  for (const Cycle& c : ob.cycles)
    for (const auto& e : cycle_edge_set(c)) ++need[e];
  for (const auto& [e, cnt] : need)
    if (cnt != 1) bad.push_back("edge appears in two boundary cycles");

  std::map<std::pair<int, int>, int> used;
  for (size_t i = 0; i + 1 < walk.size(); ++i) {
    if (!dec.lattice.has_edge(walk[i], walk[i + 1])) {
      bad.push_back("circuit step is not a lattice edge");
      return bad;
    }
    ++used[norm_edge(walk[i], walk[i + 1])];
  }
  if (used != need) bad.push_back("circuit edge multiset differs from the boundary edge set");
  for (const auto& [e, cnt] : used)
    if (cnt != 1) bad.push_back("circuit repeats an edge");
  return bad;
}

std::vector<std::string> verify_surrounding_dual_cycle(const CellDecomposition& dec,
                                                       const DualLattice& dual,
                                                       const SiteConfig& cfg,
                                                       const CellComponent& comp,
                                                       const DualCycle& pout) {
  std::vector<std::string> bad;
  if (pout.cells.size() < 3) {
    bad.push_back("dual cycle shorter than 3");
    return bad;
  }
  std::set<int> uniq(pout.cells.begin(), pout.cells.end());
  if (uniq.size() != pout.cells.size()) bad.push_back("repeated dual vertex");

  for (int c : pout.cells) {
    if (cfg.is_occupied(c)) bad.push_back("cycle cell " + dec.cell_label(c) + " is occupied");
    bool star = false;
    for (int d : dec.star_adj[c])
      if (comp.contains(d)) star = true;
    if (!star) bad.push_back("cycle cell " + dec.cell_label(c) + " not star adjacent to the component");
  }
  const int n = static_cast<int>(pout.cells.size());
  for (int i = 0; i < n; ++i)
    if (!dec.cells_adjacent(pout.cells[i], pout.cells[(i + 1) % n], AdjMode::Plus))
      bad.push_back("consecutive cycle cells not plus adjacent");

  const auto poly = cycle_polygon(dual.graph, pout.subdivided);
  for (int c : comp.cells)
    if (classify_point(dec.cell_point[c], poly) != PointLoc::Inside)
      bad.push_back("member cell " + dec.cell_label(c) + " not strictly inside the dual cycle");
  return bad;
}

std::vector<std::string> verify_surrounding_cell_ring(const CellDecomposition& dec,
                                                      const SiteConfig& cfg,
                                                      const CellComponent& comp,
                                                      const std::vector<int>& ring) {
  std::vector<std::string> bad;
  if (ring.size() < 3) {
    bad.push_back("ring shorter than 3 cells");
    return bad;
  }
  const Cycle boundary = outermost_boundary_plus(dec, comp);
  CycleClassifier cls(dec.lattice, boundary);
  for (int c : ring) {
    if (cfg.is_occupied(c)) bad.push_back("ring cell " + dec.cell_label(c) + " is occupied");
    if (cls.cell_in_closed_interior(dec.cells[c]))
      bad.push_back("ring cell " + dec.cell_label(c) + " not exterior to the boundary");
    bool plus = false;
    for (int d : dec.plus_adj[c])
      if (comp.contains(d)) plus = true;
    if (!plus) bad.push_back("ring cell " + dec.cell_label(c) + " not plus adjacent to the component");
  }
  const int n = static_cast<int>(ring.size());
  for (int i = 0; i < n; ++i)
    if (!dec.cells_adjacent(ring[i], ring[(i + 1) % n], AdjMode::Star))
      bad.push_back("ring cells " + dec.cell_label(ring[i]) + " and " +
                    dec.cell_label(ring[(i + 1) % n]) + " not star adjacent");

  // The ring's own star boundary is a single cycle containing ring and
  // component.
  try {
    const CellComponent ring_comp = component_from_cells(dec, ring, AdjMode::Star);
    const OutermostBoundary ob = outermost_boundary_star(dec, ring_comp);
    if (ob.cycles.size() != 1) {
      bad.push_back("ring star boundary has " + std::to_string(ob.cycles.size()) + " cycles");
    } else {
      CycleClassifier rc(dec.lattice, ob.cycles.front());
      for (int c : ring)
        if (!rc.cell_in_closed_interior(dec.cells[c]))
          bad.push_back("ring cell escapes the ring boundary");
      for (int c : comp.cells)
        if (!rc.cell_in_closed_interior(dec.cells[c]))
          bad.push_back("member cell escapes the ring boundary");
    }
  } catch (const Error& e) {
    bad.push_back(std::string("ring boundary construction failed: ") + e.what());
  }
  return bad;
}

}  // namespace perc
