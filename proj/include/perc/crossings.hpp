#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "perc/dual.hpp"

namespace perc {

struct Rect {
  double x0 = 0, y0 = 0, x1 = 1, y1 = 1;

  bool contains_strict(const Point2& p) const {
    return x0 < p.x && p.x < x1 && y0 < p.y && p.y < y1;
  }
  bool contains_closed(const Point2& p) const {
    return x0 <= p.x && p.x <= x1 && y0 <= p.y && p.y <= y1;
  }
  Point2 corner_tl() const { return {x0, y1}; }
  Point2 corner_tr() const { return {x1, y1}; }
  Point2 corner_bl() const { return {x0, y0}; }
  Point2 corner_br() const { return {x1, y0}; }
};

enum class CellClass {
  Left,
  Right,
  Top,
  Bottom,
  CornerTL,
  CornerTR,
  CornerBL,
  CornerBR,
  Interior,
  Outside,
};

const char* cell_class_name(CellClass c);

enum class Side { Left = 0, Right = 1, Top = 2, Bottom = 3 };

struct CutEdge {
  int edge = -1;   // lattice edge id
  int inner = -1;  // endpoint strictly inside the rectangle
  int outer = -1;  // endpoint strictly outside
  double t = 0;    // sort key along the side
};

struct RectangleCover {
  Rect rect;
  std::vector<CellClass> cls;                  // per cell
  std::array<std::vector<CutEdge>, 4> cuts;    // per side, chain order
  std::array<std::vector<int>, 4> side_cells;  // per side, chain order
  std::array<int, 4> corner = {-1, -1, -1, -1};  // TL, TR, BL, BR
  std::vector<int> interior_cells;
  std::vector<std::vector<int>> interior_paths;  // left-side A_i chains of vertices
  std::vector<int> interior_edges;               // edge ids with both endpoints strictly inside
  bool has_plus_lr = false;  // state-blind plus crossings exist
  bool has_plus_td = false;
};

/// Classifies every cell against the rectangle and verifies the covering and
/// padding clauses, throwing on the first violation.
RectangleCover build_rectangle_cover(const CellDecomposition& dec, const Rect& rect);

enum class CrossDir { LR, TD };
enum class CellState { Occupied, Vacant };

/// Witness cell path: first cell on the entry side, last on the exit side,
/// all intermediates interior cells of the requested state (>=1 of them).
std::optional<std::vector<int>> find_site_crossing(const CellDecomposition& dec,
                                                   const RectangleCover& cover,
                                                   const SiteConfig& cfg, AdjMode mode,
                                                   CrossDir dir, CellState state);

bool validate_site_crossing(const CellDecomposition& dec, const RectangleCover& cover,
                            const SiteConfig& cfg, AdjMode mode, CrossDir dir, CellState state,
                            const std::vector<int>& path, std::string* why = nullptr);

struct BondConfig {
  std::vector<char> open;  // per lattice edge; meaningful on interior edges

  bool is_open(int e) const { return open[e] != 0; }
};

std::optional<std::vector<int>> find_bond_lr_crossing(const CellDecomposition& dec,
                                                      const RectangleCover& cover,
                                                      const BondConfig& bonds);

bool validate_bond_lr_crossing(const CellDecomposition& dec, const RectangleCover& cover,
                               const BondConfig& bonds, const std::vector<int>& path,
                               std::string* why = nullptr);

/// Closed dual path from a top cell to a bottom cell whose every edge crosses
/// a closed interior edge.  Returned as primal cell indices.
std::optional<std::vector<int>> find_dual_bond_td_crossing(const CellDecomposition& dec,
                                                           const RectangleCover& cover,
                                                           const DualLattice& dual,
                                                           const BondConfig& bonds);

bool validate_dual_bond_td_crossing(const CellDecomposition& dec, const RectangleCover& cover,
                                    const DualLattice& dual, const BondConfig& bonds,
                                    const std::vector<int>& path, std::string* why = nullptr);

struct SiteCrossingReport {
  bool lr_plus_occupied = false;
  bool td_star_vacant = false;
  bool lr_star_occupied = false;
  bool td_plus_vacant = false;
  std::optional<std::vector<int>> w_lr_plus_o, w_td_star_v, w_lr_star_o, w_td_plus_v;

  bool pair_one_exclusive() const { return lr_plus_occupied != td_star_vacant; }
  bool pair_two_exclusive() const { return lr_star_occupied != td_plus_vacant; }
  bool exclusive() const { return pair_one_exclusive() && pair_two_exclusive(); }
};

/// Evaluates the four site events; requires that state-blind plus crossings
/// exist in both directions (PreconditionViolated otherwise).
SiteCrossingReport check_site_duality(const CellDecomposition& dec, const RectangleCover& cover,
                                      const SiteConfig& cfg);

struct BondCrossingReport {
  bool lr = false;
  bool td_dual = false;
  std::optional<std::vector<int>> w_lr;       // vertex path
  std::optional<std::vector<int>> w_td_dual;  // cell path

  bool exclusive() const { return lr != td_dual; }
};

BondCrossingReport check_bond_duality(const CellDecomposition& dec, const RectangleCover& cover,
                                      const DualLattice& dual, const BondConfig& bonds);

}  // namespace perc
