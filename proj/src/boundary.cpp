#include "perc/boundary.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace perc {

SiteConfig make_site_config(const CellDecomposition& dec, const std::vector<int>& occupied_cells,
                            std::optional<int> origin) {
  SiteConfig cfg;
  cfg.occupied.assign(dec.cell_count(), 0);
  for (int c : occupied_cells) {
    if (c < 0 || c >= dec.cell_count()) fail(Errc::UnknownCell, "occupied cell out of range");
    cfg.occupied[c] = 1;
  }
  if (origin) {
    if (*origin < 0 || *origin >= dec.cell_count()) fail(Errc::UnknownCell, "origin out of range");
    cfg.origin = origin;
    cfg.occupied[*origin] = 1;
  }
  return cfg;
}

CellComponent component(const CellDecomposition& dec, const SiteConfig& cfg, AdjMode mode) {
  if (!cfg.origin) fail(Errc::OriginVacant, "no origin cell set");
  const int o = *cfg.origin;
  if (o < 0 || o >= dec.cell_count()) fail(Errc::UnknownCell, "origin out of range");
  if (!cfg.is_occupied(o)) fail(Errc::OriginVacant, "origin cell is vacant");

  CellComponent comp;
  comp.mode = mode;
  comp.member.assign(dec.cell_count(), 0);
  std::queue<int> q;
  q.push(o);
  comp.member[o] = 1;
  while (!q.empty()) {
    const int c = q.front();
    q.pop();
    comp.cells.push_back(c);
    const auto& nb = (mode == AdjMode::Star) ? dec.star_adj[c] : dec.plus_adj[c];
    for (int d : nb)
      if (!comp.member[d] && cfg.is_occupied(d)) {
        comp.member[d] = 1;
        q.push(d);
      }
  }
  std::sort(comp.cells.begin(), comp.cells.end());
  return comp;
}

CellComponent component_from_cells(const CellDecomposition& dec, const std::vector<int>& cells,
                                   AdjMode mode) {
  if (cells.empty()) fail(Errc::UnknownCell, "empty cell set");
  CellComponent comp;
  comp.mode = mode;
  comp.member.assign(dec.cell_count(), 0);
  for (int c : cells) {
    if (c < 0 || c >= dec.cell_count()) fail(Errc::UnknownCell, "cell out of range");
    comp.member[c] = 1;
  }
  // connectivity within the set
  std::queue<int> q;
  std::vector<char> seen(dec.cell_count(), 0);
  q.push(cells.front());
  seen[cells.front()] = 1;
  int cnt = 1;
  while (!q.empty()) {
    const int c = q.front();
    q.pop();
    const auto& nb = (mode == AdjMode::Star) ? dec.star_adj[c] : dec.plus_adj[c];
    for (int d : nb)
      if (comp.member[d] && !seen[d]) {
        seen[d] = 1;
        ++cnt;
        q.push(d);
      }
  }
  std::set<int> uniq(cells.begin(), cells.end());
  if (cnt != static_cast<int>(uniq.size()))
    fail(Errc::PreconditionViolated, "cell set is not connected under the requested adjacency");
  comp.cells.assign(uniq.begin(), uniq.end());
  return comp;
}

std::vector<std::pair<int, int>> component_graph_edges(const CellDecomposition& dec,
                                                       const CellComponent& comp) {
  std::set<std::pair<int, int>> es;
  for (int c : comp.cells) {
    const auto& b = dec.cells[c].boundary.v;
    const int n = static_cast<int>(b.size());
    for (int i = 0; i < n; ++i) {
      const int a = b[i], d = b[(i + 1) % n];
      es.emplace(std::min(a, d), std::max(a, d));
    }
  }
  return {es.begin(), es.end()};
}

namespace {

// Maximal outer cycles over the biconnected blocks of the component graph.
// Any cycle of the graph lies within one block and inside that block's outer
// boundary, so the nest-maximal outer boundaries are exactly the outermost
// boundary cycles.
std::vector<Cycle> maximal_block_boundaries(const PlanarLattice& lat,
                                            const std::vector<std::pair<int, int>>& graph_edges) {
  std::vector<Cycle> cand;
  for (const auto& blk : biconnected_blocks(graph_edges)) {
    if (blk.size() < 3) continue;  // a single edge carries no cycle
    cand.push_back(subgraph_outer_boundary(lat, blk));
  }
  std::sort(cand.begin(), cand.end(), [&](const Cycle& a, const Cycle& b) {
    return std::abs(cycle_area(lat, a)) > std::abs(cycle_area(lat, b));
  });
  std::vector<Cycle> out;
  for (const Cycle& c : cand) {
    bool swallowed = false;
    for (const Cycle& big : out) {
      CycleClassifier cls(lat, big);
      bool inside = true;
      for (int v : c.v)
        if (cls.vertex_loc(v) == PointLoc::Outside) {
          inside = false;
          break;
        }
      if (inside) {
        swallowed = true;
        break;
      }
    }
    if (!swallowed) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

OutermostBoundary outermost_boundary_star(const CellDecomposition& dec, const CellComponent& comp) {
  if (comp.cells.empty()) fail(Errc::PreconditionViolated, "empty component");
  OutermostBoundary ob;
  ob.cycles = maximal_block_boundaries(dec.lattice, component_graph_edges(dec, comp));
  return ob;
}

Cycle outermost_boundary_plus(const CellDecomposition& dec, const CellComponent& comp) {
  if (comp.mode != AdjMode::Plus) fail(Errc::PreconditionViolated, "component is not plus-connected");
  auto cycles = maximal_block_boundaries(dec.lattice, component_graph_edges(dec, comp));
  if (cycles.size() != 1)
    fail(Errc::Internal, "plus component produced " + std::to_string(cycles.size()) + " boundary cycles");
  return cycles.front();
}

std::vector<int> euler_circuit(const OutermostBoundary& ob) {
  const auto& cyc = ob.cycles;
  if (cyc.empty()) fail(Errc::PreconditionViolated, "boundary has no cycles");

  const int n = static_cast<int>(cyc.size());
  // Corner-sharing graph of the cycles; property (iii) gives at most one
  // shared vertex per pair.
  std::map<std::pair<int, int>, int> shared_corner;
  std::vector<std::vector<int>> cadj(n);
  for (int i = 0; i < n; ++i) {
    std::set<int> vi(cyc[i].v.begin(), cyc[i].v.end());
    for (int j = i + 1; j < n; ++j) {
      int corner = -1;
      int cnt = 0;
      for (int v : cyc[j].v)
        if (vi.count(v)) {
          ++cnt;
          if (corner < 0 || v < corner) corner = v;
        }
      if (cnt > 1) fail(Errc::Internal, "boundary cycles share more than one vertex");
      if (cnt == 1) {
        cadj[i].push_back(j);
        cadj[j].push_back(i);
        shared_corner[{i, j}] = corner;
        shared_corner[{j, i}] = corner;
      }
    }
  }

  // BFS spanning tree from the canonically smallest cycle (index 0 since the
  // cycles are sorted).
  std::vector<int> parent(n, -1);
  std::vector<char> seen(n, 0);
  std::vector<int> order;
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  while (!q.empty()) {
    const int c = q.front();
    q.pop();
    order.push_back(c);
    for (int d : cadj[c])
      if (!seen[d]) {
        seen[d] = 1;
        parent[d] = c;
        q.push(d);
      }
  }
  if (static_cast<int>(order.size()) != n)
    fail(Errc::Internal, "outermost boundary cycles are not connected");

  auto closed_walk = [](const Cycle& c) {
    std::vector<int> w(c.v);
    w.push_back(c.v.front());
    return w;
  };
  // Rotate a closed walk (w.front()==w.back()) to start and end at `at`.
  auto rotate_to = [](std::vector<int> w, int at) {
    w.pop_back();
    auto it = std::find(w.begin(), w.end(), at);
    std::rotate(w.begin(), it, w.end());
    w.push_back(w.front());
    return w;
  };

  std::vector<int> walk = closed_walk(cyc[order[0]]);
  for (size_t k = 1; k < order.size(); ++k) {
    const int c = order[k];
    const int w0 = shared_corner.at({parent[c], c});
    std::vector<int> piece = rotate_to(closed_walk(cyc[c]), w0);
    auto at = std::find(walk.begin(), walk.end(), w0);
    if (at == walk.end()) fail(Errc::Internal, "corner vertex missing from circuit");
    walk.insert(at + 1, piece.begin() + 1, piece.end());
  }
  return walk;
}

}  // namespace perc
