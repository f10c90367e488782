#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "perc/checks.hpp"
#include "perc/dual.hpp"
#include "perc/generators.hpp"
#include "perc/rng.hpp"

using namespace perc;

TEST_CASE("square-grid duals satisfy every axiom") {
  for (int n = 3; n <= 6; ++n) {
    const CellDecomposition dec = decompose_cells(gen_square_lattice(n, n));
    const DualLattice dual = construct_dual(dec);
    REQUIRE(dual.valid());
    const DualityReport rep = verify_duality_properties(dec, dual);
    CHECK(rep.all_pass());

    // housed vertices are exactly the interior grid vertices
    int housed = 0;
    for (int v = 0; v < dec.lattice.vcount(); ++v)
      if (dual.vertex_dual_cell[v] >= 0) ++housed;
    CHECK(housed == (n - 1) * (n - 1));
    CHECK(dual.cells.cell_count() == (n - 1) * (n - 1));
  }
}

TEST_CASE("perturbed duals keep the axioms") {
  for (int t = 0; t < 5; ++t) {
    const CellDecomposition dec = decompose_cells(gen_perturbed_lattice(5, 5, 0.2, 100 + t));
    const DualLattice dual = construct_dual(dec);
    REQUIRE(dual.valid());
    CHECK(verify_duality_properties(dec, dual).all_pass());
  }
}

TEST_CASE("two plus-adjacent squares give an acyclic dual") {
  const CellDecomposition dec = decompose_cells(gen_square_lattice(2, 1));
  const DualLattice dual = construct_dual(dec);
  REQUIRE_FALSE(dual.valid());
  CHECK(dual.failure->code == DualFailureCode::Acyclic);
  const DualityReport rep = verify_duality_properties(dec, dual);
  CHECK_FALSE(rep.a3.pass);
  CHECK(rep.a1.pass);
}

TEST_CASE("corner-joined blocks give a disconnected dual") {
  const auto r = fixtures::corner_blocks_lattice();
  const CellDecomposition dec = decompose_cells(validate_lattice(r.verts, r.edges));
  REQUIRE(dec.cell_count() == 8);
  const DualLattice dual = construct_dual(dec);
  REQUIRE_FALSE(dual.valid());
  CHECK(dual.failure->code == DualFailureCode::NotConnected);
}

TEST_CASE("split ring violates niceness with the witnessing pair") {
  const auto r = fixtures::split_ring_lattice();
  const CellDecomposition dec = decompose_cells(validate_lattice(r.verts, r.edges));
  REQUIRE(dec.cell_count() == 3);
  const DualLattice dual = construct_dual(dec);
  const DualityReport rep = verify_duality_properties(dec, dual);
  CHECK_FALSE(rep.a1.pass);
  CHECK(rep.a1.witness.find("share 2 edges") != std::string::npos);
}

TEST_CASE("dual of the dual matches primal adjacency on grids") {
  const CellDecomposition dec = decompose_cells(gen_square_lattice(4, 4));
  const DualLattice dual = construct_dual(dec);
  REQUIRE(dual.valid());
  for (int v1 = 0; v1 < dec.lattice.vcount(); ++v1)
    for (int v2 = v1 + 1; v2 < dec.lattice.vcount(); ++v2) {
      const int w1 = dual.vertex_dual_cell[v1];
      const int w2 = dual.vertex_dual_cell[v2];
      if (w1 < 0 || w2 < 0) continue;
      CHECK(dec.lattice.has_edge(v1, v2) == dual.cells.cells_adjacent(w1, w2, AdjMode::Plus));
    }
}

TEST_CASE("surrounding dual cycle of one interior cell is the eight-ring") {
  const CellDecomposition dec = decompose_cells(gen_square_lattice(5, 5));
  const DualLattice dual = construct_dual(dec);
  REQUIRE(dual.valid());
  const int mid = fixtures::grid_cell(dec, 5, 2, 2);
  SiteConfig cfg = make_site_config(dec, {}, mid);
  const CellComponent comp = component(dec, cfg, AdjMode::Star);

  const DualCycle pout = vacant_dual_cycle_around_star(dec, dual, comp);
  CHECK(pout.cells.size() == 8);
  std::set<int> expect;
  for (int di = -1; di <= 1; ++di)
    for (int dj = -1; dj <= 1; ++dj)
      if (di || dj) expect.insert(fixtures::grid_cell(dec, 5, 2 + di, 2 + dj));
  CHECK(std::set<int>(pout.cells.begin(), pout.cells.end()) == expect);
  CHECK(verify_surrounding_dual_cycle(dec, dual, cfg, comp, pout).empty());

  SUBCASE("brute force agrees") {
    const auto oracle = oracles::qualifying_dual_cycles(dec, dual, cfg, comp);
    REQUIRE(oracle.maximal >= 0);
    CHECK(oracles::same_cycle(oracle.cycles[oracle.maximal], pout.cells));
  }
}

TEST_CASE("surrounding dual cycle of a domino is the ten-ring") {
  const CellDecomposition dec = decompose_cells(gen_square_lattice(6, 6));
  const DualLattice dual = construct_dual(dec);
  REQUIRE(dual.valid());
  const int a = fixtures::grid_cell(dec, 6, 2, 2);
  const int b = fixtures::grid_cell(dec, 6, 3, 2);
  SiteConfig cfg = make_site_config(dec, {a, b}, a);
  const CellComponent comp = component(dec, cfg, AdjMode::Star);
  const DualCycle pout = vacant_dual_cycle_around_star(dec, dual, comp);
  CHECK(pout.cells.size() == 10);
  CHECK(verify_surrounding_dual_cycle(dec, dual, cfg, comp, pout).empty());
}

TEST_CASE("component touching the hull violates the housing hypothesis") {
  const CellDecomposition dec = decompose_cells(gen_square_lattice(4, 4));
  const DualLattice dual = construct_dual(dec);
  const int corner = fixtures::grid_cell(dec, 4, 0, 0);
  SiteConfig cfg = make_site_config(dec, {}, corner);
  const CellComponent comp = component(dec, cfg, AdjMode::Star);
  CHECK_THROWS_WITH_AS((void)vacant_dual_cycle_around_star(dec, dual, comp),
                       doctest::Contains("HypothesisViolated"), Error);
}

TEST_CASE("pocket fixture: constructive cycle detours, maximal cycle is the ring") {
  const auto f = fixtures::pocket_lattice();
  REQUIRE(f.dec.cell_count() == 11);
  const DualLattice dual = construct_dual(f.dec);
  REQUIRE(dual.valid());
  const DualityReport rep = verify_duality_properties(f.dec, dual);
  INFO(rep.summary());
  REQUIRE(rep.all_pass());

  const CellComponent comp = component(f.dec, f.cfg, AdjMode::Star);
  REQUIRE(comp.size() == 2);

  const DualCycle seed = vacant_dual_seed_cycle(f.dec, dual, comp);
  const DualCycle pout = vacant_dual_cycle_around_star(f.dec, dual, comp);

  const std::vector<int> ring{f.ring[1], f.ring[2], f.ring[3], f.ring[4],
                              f.ring[5], f.ring[6], f.ring[7]};
  const std::vector<int> detour{f.ring[1], f.ring[2], f.ring[3], f.ring[4], f.ring[5],
                                f.p9,      f.p8,      f.ring[6], f.ring[7]};
  CHECK(oracles::same_cycle(seed.cells, detour));
  CHECK(oracles::same_cycle(pout.cells, ring));
  CHECK(verify_surrounding_dual_cycle(f.dec, dual, f.cfg, comp, pout).empty());

  SUBCASE("exactly the two qualifying cycles exist and the ring is maximal") {
    const auto oracle = oracles::qualifying_dual_cycles(f.dec, dual, f.cfg, comp);
    REQUIRE(oracle.cycles.size() == 2);
    REQUIRE(oracle.maximal >= 0);
    CHECK(oracles::same_cycle(oracle.cycles[oracle.maximal], ring));
    bool saw_detour = false;
    for (const auto& c : oracle.cycles) saw_detour |= oracles::same_cycle(c, detour);
    CHECK(saw_detour);
  }
}

TEST_CASE("vacant ring around a plus component") {
  SUBCASE("single interior cell: the four edge-neighbors, corner-linked") {
    const CellDecomposition dec = decompose_cells(gen_square_lattice(5, 5));
    const int mid = fixtures::grid_cell(dec, 5, 2, 2);
    SiteConfig cfg = make_site_config(dec, {}, mid);
    const CellComponent comp = component(dec, cfg, AdjMode::Plus);
    const std::vector<int> ring = vacant_cell_cycle_around_plus(dec, cfg, comp);
    REQUIRE(ring.size() == 4);
    std::set<int> expect{fixtures::grid_cell(dec, 5, 1, 2), fixtures::grid_cell(dec, 5, 3, 2),
                         fixtures::grid_cell(dec, 5, 2, 1), fixtures::grid_cell(dec, 5, 2, 3)};
    CHECK(std::set<int>(ring.begin(), ring.end()) == expect);
    CHECK(verify_surrounding_cell_ring(dec, cfg, comp, ring).empty());
  }
  SUBCASE("domino: six neighbors in boundary order") {
    const CellDecomposition dec = decompose_cells(gen_square_lattice(6, 6));
    const int a = fixtures::grid_cell(dec, 6, 2, 2);
    const int b = fixtures::grid_cell(dec, 6, 3, 2);
    SiteConfig cfg = make_site_config(dec, {a, b}, a);
    const CellComponent comp = component(dec, cfg, AdjMode::Plus);
    const std::vector<int> ring = vacant_cell_cycle_around_plus(dec, cfg, comp);
    CHECK(ring.size() == 6);
    CHECK(verify_surrounding_cell_ring(dec, cfg, comp, ring).empty());
  }
  SUBCASE("non-maximal component is rejected") {
    const CellDecomposition dec = decompose_cells(gen_square_lattice(5, 5));
    const int mid = fixtures::grid_cell(dec, 5, 2, 2);
    std::vector<int> all;
    for (int c = 0; c < dec.cell_count(); ++c) all.push_back(c);
    SiteConfig cfg = make_site_config(dec, all, mid);
    const CellComponent fake = component_from_cells(dec, {mid}, AdjMode::Plus);
    CHECK_THROWS_WITH_AS((void)vacant_cell_cycle_around_plus(dec, cfg, fake),
                         doctest::Contains("MissingVacantNeighbor"), Error);
  }
  SUBCASE("component on the hull has no vacant neighbor across hull edges") {
    const CellDecomposition dec = decompose_cells(gen_square_lattice(3, 3));
    const int corner = fixtures::grid_cell(dec, 3, 0, 0);
    SiteConfig cfg = make_site_config(dec, {}, corner);
    const CellComponent comp = component(dec, cfg, AdjMode::Plus);
    CHECK_THROWS_WITH_AS((void)vacant_cell_cycle_around_plus(dec, cfg, comp),
                         doctest::Contains("MissingVacantNeighbor"), Error);
  }
}

TEST_CASE("random interior components: surrounding cycle is maximal by enumeration") {
  const CellDecomposition dec = decompose_cells(gen_square_lattice(5, 5));
  const DualLattice dual = construct_dual(dec);
  REQUIRE(dual.valid());
  REQUIRE(verify_duality_properties(dec, dual).all_pass());
  const int origin = fixtures::grid_cell(dec, 5, 2, 2);

  std::vector<char> hull_clear(dec.cell_count(), 0);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) hull_clear[fixtures::grid_cell(dec, 5, i, j)] = 1;

  CounterRng rng(77);
  int done = 0;
  while (done < 25) {
    SiteConfig cfg = sample_site_config(dec, 0.45, rng.next_u64(), origin);
    for (int c = 0; c < dec.cell_count(); ++c)
      if (!hull_clear[c]) cfg.occupied[c] = 0;
    cfg.occupied[origin] = 1;
    const CellComponent comp = component(dec, cfg, AdjMode::Star);
    const DualCycle pout = vacant_dual_cycle_around_star(dec, dual, comp);
    CHECK(verify_surrounding_dual_cycle(dec, dual, cfg, comp, pout).empty());
    const auto oracle = oracles::qualifying_dual_cycles(dec, dual, cfg, comp);
    REQUIRE(oracle.maximal >= 0);
    CHECK(oracles::same_cycle(oracle.cycles[oracle.maximal], pout.cells));
    ++done;
  }
}
