#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perc/boundary.hpp"
#include "perc/lattice.hpp"

namespace perc {

enum class DualFailureCode { NotPlanar, NotConnected, Acyclic, Degenerate };

struct DualFailure {
  DualFailureCode code;
  std::string detail;
};

const char* dual_failure_name(DualFailureCode c);

struct DualEdge {
  int c1 = -1, c2 = -1;  // primal cell indices, c1 < c2
  int primal_edge = -1;  // the crossed primal edge
  Point2 mid;            // bend point: midpoint of the crossed edge
};

/// Dual graph with one vertex strictly inside each primal cell and one
/// two-segment polyline edge per plus-adjacent cell pair.  The polyline graph
/// is materialized as a straight-line lattice by subdividing every dual edge
/// at its bend point, which lets all cycle/face machinery run unchanged.
/// In the subdivided lattice, vertex k < cell_count() is the dual vertex of
/// primal cell k and higher indices are bend points.
struct DualLattice {
  std::vector<Point2> site;         // dual vertex per primal cell
  std::vector<DualEdge> dual_edges;
  std::optional<DualFailure> failure;

  // Populated only when the dual validates as a lattice.
  PlanarLattice graph;      // subdivided straight-line version
  CellDecomposition cells;  // decomposition of `graph`
  std::vector<std::vector<int>> dual_cell_corners;  // real dual vertices per dual cell
  std::vector<int> vertex_dual_cell;                // per primal vertex; -1 when not housed

  int primal_cells = 0;

  bool valid() const { return !failure.has_value(); }
  bool is_bend(int subdivided_vertex) const { return subdivided_vertex >= primal_cells; }

  /// Drops bend points from a cycle in the subdivided graph.
  std::vector<int> collapse(const Cycle& c) const;
};

DualLattice construct_dual(const CellDecomposition& dec);

struct PropertyResult {
  bool pass = true;
  std::string witness;
};

struct DualityReport {
  PropertyResult a1, a2, a3, a4, a5;
  bool all_pass() const { return a1.pass && a2.pass && a3.pass && a4.pass && a5.pass; }
  std::string summary() const;
};

DualityReport verify_duality_properties(const CellDecomposition& dec, const DualLattice& dual);

/// Cycle in the dual graph, as the primal cells the dual vertices sit in.
struct DualCycle {
  std::vector<int> cells;
  Cycle subdivided;  // same cycle in the subdivided dual lattice
};

/// Outermost cycle of vacant, star-adjacent dual vertices surrounding a
/// maximal star component.  Requires the duality axioms and that every
/// component vertex sits strictly inside a dual cell.
DualCycle vacant_dual_cycle_around_star(const CellDecomposition& dec, const DualLattice& dual,
                                        const CellComponent& comp);

/// The constructive cycle from the boundary-vertex dual cells alone, before
/// merging with other qualifying cycles.  Exposed for verification.
DualCycle vacant_dual_seed_cycle(const CellDecomposition& dec, const DualLattice& dual,
                                 const CellComponent& comp);

/// Star-connected cycle of vacant cells hugging a plus component from the
/// outside, in boundary order, first occurrence kept on repeats.
std::vector<int> vacant_cell_cycle_around_plus(const CellDecomposition& dec, const SiteConfig& cfg,
                                               const CellComponent& comp);

}  // namespace perc
