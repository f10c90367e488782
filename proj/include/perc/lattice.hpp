#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "perc/geometry.hpp"

namespace perc {

using VertexId = long long;

/// Simple closed cycle as internal vertex indices; consecutive entries (and
/// last-to-first) are lattice edges.
struct Cycle {
  std::vector<int> v;

  int size() const { return static_cast<int>(v.size()); }
  bool empty() const { return v.empty(); }
  friend bool operator==(const Cycle&, const Cycle&) = default;
  friend auto operator<=>(const Cycle& a, const Cycle& b) { return a.v <=> b.v; }
};

/// Rotates min-vertex-first and orients counterclockwise.
Cycle canonical_cycle(std::vector<int> walk, std::span<const Point2> pts);

struct PlanarLattice {
  std::vector<VertexId> ids;  // ascending external ids; index is the internal id
  std::vector<Point2> pts;
  std::vector<std::pair<int, int>> edges;  // (a<b), lexicographically sorted
  std::vector<std::vector<int>> adj;       // sorted neighbor lists
  RotationSystem rot;
  std::unordered_map<VertexId, int> index_of_id;
  std::map<std::pair<int, int>, int> edge_index;

  int vcount() const { return static_cast<int>(ids.size()); }
  int ecount() const { return static_cast<int>(edges.size()); }

  int edge_id(int a, int b) const {
    auto it = edge_index.find({std::min(a, b), std::max(a, b)});
    return it == edge_index.end() ? -1 : it->second;
  }
  bool has_edge(int a, int b) const { return edge_id(a, b) >= 0; }
};

/// Validates connectivity, straight-line planarity, bridgelessness and basic
/// sanity, in that order; returns the lattice with its rotation system.
PlanarLattice validate_lattice(const std::vector<std::pair<VertexId, Point2>>& vertices,
                               const std::vector<std::pair<VertexId, VertexId>>& edges);

struct Cell {
  Cycle boundary;  // canonical counterclockwise cycle
  double area = 0.0;
};

enum class AdjMode { Star, Plus };

struct CellDecomposition {
  PlanarLattice lattice;
  std::vector<Cell> cells;  // sorted by canonical boundary
  std::vector<Point2> cell_point;                // strictly interior, per cell
  std::vector<std::array<int, 2>> edge_cells;    // per edge id; -1 when absent
  std::vector<std::vector<int>> star_adj;        // per cell, sorted
  std::vector<std::vector<int>> plus_adj;
  std::vector<std::vector<int>> vertex_cells;    // per vertex, sorted

  int cell_count() const { return static_cast<int>(cells.size()); }

  bool is_unicellular(int a, int b) const;           // throws UnknownEdge
  bool cells_adjacent(int a, int b, AdjMode) const;  // throws UnknownCell / CellsNotDistinct

  /// External canonical id, e.g. "0-1-6-5" (external vertex ids).
  std::string cell_label(int c) const;
  std::optional<int> cell_by_label(const std::string& label) const;
};

CellDecomposition decompose_cells(const PlanarLattice& lat);

/// Innermost cycle containing the closed interiors of both input cycles,
/// built from their edges only.  Requires >1 shared vertex.
Cycle merge_cycles(const PlanarLattice& lat, const Cycle& c, const Cycle& d);

struct ShellSet {
  std::vector<Cycle> shells;
  std::vector<int> cell_shell;  // per cell: owning shell index
};

ShellSet shell_cycles(const CellDecomposition& dec);

// ---------------------------------------------------------------------------
// Exact classification of lattice entities against a cycle.

enum class EdgeSide { On, Inside, Outside };

class CycleClassifier {
 public:
  CycleClassifier(const PlanarLattice& lat, const Cycle& cyc);

  PointLoc vertex_loc(int v) const;        // exact for lattice vertices
  EdgeSide edge_side(int a, int b) const;  // exact for lattice edges
  bool cell_in_closed_interior(const Cell& cell) const;

  const std::vector<Point2>& polygon() const { return poly_; }

 private:
  const PlanarLattice& lat_;
  const Cycle& cyc_;
  std::vector<Point2> poly_;
  std::unordered_map<int, int> pos_;  // vertex -> index in cycle
  mutable std::unordered_map<int, PointLoc> cache_;
};

std::vector<Point2> cycle_polygon(const PlanarLattice& lat, const Cycle& cyc);
double cycle_area(const PlanarLattice& lat, const Cycle& cyc);

// ---------------------------------------------------------------------------
// Subgraph utilities shared by the boundary and dual modules.

/// Outer boundary of the filled region of a connected subgraph, returned
/// counterclockwise.  Throws Internal if the outer walk is not simple.
Cycle subgraph_outer_boundary(const PlanarLattice& lat,
                              const std::vector<std::pair<int, int>>& sub_edges);

/// Biconnected components (as edge lists) of an abstract graph.
std::vector<std::vector<std::pair<int, int>>> biconnected_blocks(
    const std::vector<std::pair<int, int>>& edges);

}  // namespace perc
