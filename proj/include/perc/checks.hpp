#pragma once

#include <string>
#include <vector>

#include "perc/crossings.hpp"
#include "perc/dual.hpp"

namespace perc {

/// Property validators for the main structural theorems.  Each returns a list
/// of violation descriptions; empty means the property holds on this input.

/// Outermost boundary of a star component: boundary edges are exactly the
/// returned cycle edges, the union is connected, cycles have disjoint
/// interiors sharing at most one vertex, every member cell sits inside
/// exactly one cycle, and every cycle edge is a boundary edge with its
/// occupied cell inside and any vacant cell outside all cycles.
std::vector<std::string> verify_star_boundary(const CellDecomposition& dec, const SiteConfig& cfg,
                                              const CellComponent& comp,
                                              const OutermostBoundary& ob);

/// Plus component: single cycle, all member cells strictly inside, every
/// edge adjacent to an occupied member inside and, when not unicellular, a
/// vacant cell outside.
std::vector<std::string> verify_plus_boundary(const CellDecomposition& dec, const SiteConfig& cfg,
                                              const CellComponent& comp, const Cycle& boundary);

/// Closed circuit covering each boundary edge exactly once.
std::vector<std::string> verify_euler_circuit(const CellDecomposition& dec,
                                              const OutermostBoundary& ob,
                                              const std::vector<int>& walk);

/// Surrounding vacant dual cycle: every cycle cell vacant and star adjacent
/// to the component, all member cells strictly inside.
std::vector<std::string> verify_surrounding_dual_cycle(const CellDecomposition& dec,
                                                       const DualLattice& dual,
                                                       const SiteConfig& cfg,
                                                       const CellComponent& comp,
                                                       const DualCycle& pout);

/// Surrounding vacant cell ring around a plus component: cells vacant,
/// exterior, plus adjacent to members, cyclically star adjacent, and their
/// star boundary is one cycle containing ring and component.
std::vector<std::string> verify_surrounding_cell_ring(const CellDecomposition& dec,
                                                      const SiteConfig& cfg,
                                                      const CellComponent& comp,
                                                      const std::vector<int>& ring);

}  // namespace perc
