#pragma once

// Hand-built lattices used across the test suites.  Each returns the raw
// vertex/edge lists (so validation itself can be under test) or a ready
// decomposition plus name->cell maps.

#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "perc/boundary.hpp"
#include "perc/lattice.hpp"

namespace fixtures {

using perc::CellDecomposition;
using perc::PlanarLattice;
using perc::Point2;
using perc::VertexId;

struct Raw {
  std::vector<std::pair<VertexId, Point2>> verts;
  std::vector<std::pair<VertexId, VertexId>> edges;
};

/// Cell index whose boundary vertex set equals `ids` (external ids).
inline int cell_with_vertices(const CellDecomposition& dec, std::set<VertexId> ids) {
  for (int c = 0; c < dec.cell_count(); ++c) {
    std::set<VertexId> got;
    for (int v : dec.cells[c].boundary.v) got.insert(dec.lattice.ids[v]);
    if (got == ids) return c;
  }
  throw std::runtime_error("no cell with the requested corners");
}

/// Grid cell (i,j) of gen_square_lattice(n,m).
inline int grid_cell(const CellDecomposition& dec, int n, int i, int j) {
  auto id = [n](int x, int y) { return static_cast<VertexId>(y) * (n + 1) + x; };
  return cell_with_vertices(dec, {id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
}

// ---------------------------------------------------------------------------
// Two overlapping hexagon/pentagon cycles sharing edge (b,e) and vertex d;
// merging them yields a-b-c-d-f-g.  Vertex ids: a0 b1 c2 d3 e4 f5 g6 h7.
inline Raw notched_merge_lattice() {
  Raw r;
  r.verts = {{0, {0, 0}}, {1, {3, 0}}, {2, {5, 2}}, {3, {3, 4}},
             {4, {3, 2}}, {5, {1, 4}}, {6, {-1, 2}}, {7, {4, 2}}};
  r.edges = {{0, 1}, {1, 4}, {4, 3}, {3, 5}, {5, 6}, {6, 0},   // hexagon a b e d f g
             {4, 7}, {7, 3}, {3, 2}, {2, 1}};                  // pentagon b e h d c
  return r;
}

// ---------------------------------------------------------------------------
// Six-cell lattice whose occupied star component has the two boundary
// cycles a-b-c-d-e-f-g and f-h-k joined at f.
// ids: a0 b1 c2 d3 e4 f5 g6 h7 k8 m9 z10.
struct StarFixture {
  CellDecomposition dec;
  perc::SiteConfig cfg;
  int abg, bmg, bcdem, efgm, fhk, cdz;
};

inline StarFixture corner_linked_lattice() {
  Raw r;
  r.verts = {{0, {2, 2}},  {1, {0, 0}},  {2, {-1, -3}}, {3, {1, -5}},
             {4, {3, -5}}, {5, {5, -3}}, {6, {4, 0}},   {7, {7, -4}},
             {8, {6, -1}}, {9, {2, -1}}, {10, {-2, -6}}};
  r.edges = {{0, 1}, {0, 6}, {1, 6}, {1, 9}, {9, 6}, {1, 2}, {2, 3}, {3, 4},
             {4, 9}, {4, 5}, {5, 6}, {5, 7}, {7, 8}, {8, 5}, {3, 10}, {10, 2}};
  StarFixture f{perc::decompose_cells(perc::validate_lattice(r.verts, r.edges)), {}, 0, 0, 0, 0, 0, 0};
  f.abg = cell_with_vertices(f.dec, {0, 1, 6});
  f.bmg = cell_with_vertices(f.dec, {1, 9, 6});
  f.bcdem = cell_with_vertices(f.dec, {1, 2, 3, 4, 9});
  f.efgm = cell_with_vertices(f.dec, {4, 5, 6, 9});
  f.fhk = cell_with_vertices(f.dec, {5, 7, 8});
  f.cdz = cell_with_vertices(f.dec, {2, 3, 10});
  f.cfg = perc::make_site_config(f.dec, {f.abg, f.bcdem, f.efgm, f.fhk}, f.bcdem);
  return f;
}

// ---------------------------------------------------------------------------
// Two plus-adjacent occupied squares with a two-cell pocket below them and a
// seven-cell ring around everything.  The constructive surrounding cycle
// detours through the pocket; the maximal one is the ring.
// ids: A0 B1 C2 P3 Q4 D5 E6 MR7 TR8 TL9 (0,1)=10 (1,1)=11 (2,1)=12 (1,2)=13.
struct PocketFixture {
  CellDecomposition dec;
  perc::SiteConfig cfg;
  int o1, o2, p8, p9;
  std::array<int, 8> ring;  // ring[1..7] are the ring cells, ring[0] unused
};

inline PocketFixture pocket_lattice() {
  Raw r;
  r.verts = {{0, {0, 0}},  {1, {1, 0}},  {2, {2, 0}},  {3, {1, -1}}, {4, {1, -2}},
             {5, {3, -2}}, {6, {-1, -2}}, {7, {3, 0}},  {8, {3, 2}},  {9, {-1, 2}},
             {10, {0, 1}}, {11, {1, 1}}, {12, {2, 1}}, {13, {1, 2}}};
  r.edges = {{0, 1},  {1, 11}, {11, 10}, {10, 0},          // occupied square O1
             {1, 2},  {2, 12}, {12, 11},                   // occupied square O2
             {1, 3},  {3, 0},                              // pocket triangle edges
             {2, 3},                                       // pocket triangle edge
             {11, 13}, {13, 9}, {9, 10},                   // ring cell 1
             {12, 8}, {8, 13},                             // ring cell 2
             {8, 7},  {7, 2},                              // ring cell 3
             {7, 5},  {5, 2},                              // ring cell 4
             {3, 4},  {4, 5},                              // ring cell 5
             {0, 6},  {6, 4},                              // ring cell 6
             {9, 6}};                                      // ring cell 7
  PocketFixture f{perc::decompose_cells(perc::validate_lattice(r.verts, r.edges)), {}, 0, 0, 0, 0, {}};
  f.o1 = cell_with_vertices(f.dec, {0, 1, 11, 10});
  f.o2 = cell_with_vertices(f.dec, {1, 2, 12, 11});
  f.p8 = cell_with_vertices(f.dec, {0, 1, 3});
  f.p9 = cell_with_vertices(f.dec, {1, 2, 3});
  f.ring[1] = cell_with_vertices(f.dec, {10, 11, 13, 9});
  f.ring[2] = cell_with_vertices(f.dec, {11, 12, 8, 13});
  f.ring[3] = cell_with_vertices(f.dec, {12, 8, 7, 2});
  f.ring[4] = cell_with_vertices(f.dec, {2, 7, 5});
  f.ring[5] = cell_with_vertices(f.dec, {2, 3, 4, 5});
  f.ring[6] = cell_with_vertices(f.dec, {0, 6, 4, 3});
  f.ring[7] = cell_with_vertices(f.dec, {0, 10, 9, 6});
  f.cfg = perc::make_site_config(f.dec, {f.o1, f.o2}, f.o1);
  return f;
}

// ---------------------------------------------------------------------------
// Two unit squares sharing one corner.
inline Raw bowtie_squares() {
  Raw r;
  r.verts = {{0, {0, 0}}, {1, {1, 0}}, {2, {1, 1}}, {3, {0, 1}},
             {4, {2, 1}}, {5, {2, 2}}, {6, {1, 2}}};
  r.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {2, 4}, {4, 5}, {5, 6}, {6, 2}};
  return r;
}

// Triangle nested inside another, attached at one shared corner; bridgeless
// but the annulus face is not a simple cycle.
inline Raw nested_triangles() {
  Raw r;
  r.verts = {{0, {0, 0}}, {1, {6, 0}}, {2, {0, 6}}, {3, {2, 1}}, {4, {1, 2}}};
  r.edges = {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}};
  return r;
}

// Square ring split into two C-shaped cells by two spokes: the C cells are
// plus adjacent and share two disjoint edges (a niceness counterexample).
inline Raw split_ring_lattice() {
  Raw r;
  r.verts = {{0, {0, 0}}, {1, {2, 0}}, {2, {4, 0}}, {3, {4, 4}}, {4, {2, 4}}, {5, {0, 4}},
             {6, {1, 1}}, {7, {2, 1}}, {8, {3, 1}}, {9, {3, 3}}, {10, {2, 3}}, {11, {1, 3}}};
  r.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0},
             {6, 7}, {7, 8}, {8, 9}, {9, 10}, {10, 11}, {11, 6},
             {1, 7}, {4, 10}};
  return r;
}

// 5x3 grid with the edge between (0,1) and (1,1) removed, fusing the two
// leftmost cells of the bottom rows into one tall cell.  A rectangle over
// the right part is nicely covered but not nicely padded: the tall cell and
// the cell above it sit on opposite extended side lines yet share corners.
inline Raw tall_flank_lattice() {
  Raw r;
  auto id = [](int i, int j) { return static_cast<VertexId>(j) * 6 + i; };
  for (int j = 0; j <= 3; ++j)
    for (int i = 0; i <= 5; ++i)
      r.verts.push_back({id(i, j), Point2{static_cast<double>(i), static_cast<double>(j)}});
  for (int j = 0; j <= 3; ++j)
    for (int i = 0; i < 5; ++i) {
      if (j == 1 && i == 0) continue;  // the fused pair
      r.edges.push_back({id(i, j), id(i + 1, j)});
    }
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i <= 5; ++i) r.edges.push_back({id(i, j), id(i, j + 1)});
  return r;
}

// Two 2x2 blocks sharing one corner vertex; the dual splits into two
// four-cycles and is not connected.
inline Raw corner_blocks_lattice() {
  Raw r;
  auto add = [&](double ox, double oy, VertexId base) {
    for (int j = 0; j <= 2; ++j)
      for (int i = 0; i <= 2; ++i)
        r.verts.push_back({base + j * 3 + i, Point2{ox + i, oy + j}});
    auto id = [base](int i, int j) { return base + j * 3 + i; };
    for (int j = 0; j <= 2; ++j)
      for (int i = 0; i < 2; ++i) r.edges.push_back({id(i, j), id(i + 1, j)});
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i <= 2; ++i) r.edges.push_back({id(i, j), id(i, j + 1)});
  };
  add(0, 0, 0);
  add(2, 2, 100);
  // merge the duplicated corner: block B's (0,0) is vertex 100 at (2,2),
  // which coincides with block A's vertex 8.  Rewire and drop it.
  std::vector<std::pair<VertexId, Point2>> verts;
  for (const auto& [id, p] : r.verts)
    if (id != 100) verts.push_back({id, p});
  for (auto& [a, b] : r.edges) {
    if (a == 100) a = 8;
    if (b == 100) b = 8;
  }
  r.verts = std::move(verts);
  return r;
}

}  // namespace fixtures
