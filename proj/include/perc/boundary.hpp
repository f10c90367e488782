#pragma once

#include <optional>
#include <vector>

#include "perc/lattice.hpp"

namespace perc {

struct SiteConfig {
  std::vector<char> occupied;  // per cell
  std::optional<int> origin;   // cell required occupied for component queries

  bool is_occupied(int c) const { return occupied[c] != 0; }
};

SiteConfig make_site_config(const CellDecomposition& dec, const std::vector<int>& occupied_cells,
                            std::optional<int> origin = std::nullopt);

struct CellComponent {
  AdjMode mode = AdjMode::Star;
  std::vector<int> cells;    // sorted
  std::vector<char> member;  // per cell

  bool contains(int c) const { return member[c] != 0; }
  int size() const { return static_cast<int>(cells.size()); }
};

/// Maximal occupied component of cfg.origin under the given adjacency.
CellComponent component(const CellDecomposition& dec, const SiteConfig& cfg, AdjMode mode);

/// Wraps an explicit cell set; verifies it is mode-connected.
CellComponent component_from_cells(const CellDecomposition& dec, const std::vector<int>& cells,
                                   AdjMode mode);

/// Vertices and edges of the component cells (the component graph).
std::vector<std::pair<int, int>> component_graph_edges(const CellDecomposition& dec,
                                                       const CellComponent& comp);

struct OutermostBoundary {
  std::vector<Cycle> cycles;  // pairwise disjoint interiors, <=1 shared vertex
};

OutermostBoundary outermost_boundary_star(const CellDecomposition& dec, const CellComponent& comp);

/// Single boundary cycle of a plus-connected component.
Cycle outermost_boundary_plus(const CellDecomposition& dec, const CellComponent& comp);

/// Closed walk traversing every boundary edge exactly once, built by
/// concatenating the cycles along a spanning tree of their corner-sharing
/// graph.  Returned as v0..vk with v0 == vk.
std::vector<int> euler_circuit(const OutermostBoundary& ob);

}  // namespace perc
