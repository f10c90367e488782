#include <doctest.h>

#include "perc/experiment.hpp"
#include "perc/generators.hpp"

using namespace perc;

TEST_CASE("square generator counts") {
  const PlanarLattice one = gen_square_lattice(1, 1);
  CHECK(one.vcount() == 4);
  CHECK(one.ecount() == 4);
  const PlanarLattice lat = gen_square_lattice(4, 3);
  CHECK(lat.vcount() == 5 * 4);
  CHECK(lat.ecount() == 4 * 4 + 3 * 5);
  CHECK(decompose_cells(lat).cell_count() == 12);
}

TEST_CASE("perturbed generator") {
  SUBCASE("zero jitter reproduces the square lattice") {
    const PlanarLattice a = gen_square_lattice(3, 3);
    const PlanarLattice b = gen_perturbed_lattice(3, 3, 0.0, 9);
    REQUIRE(a.vcount() == b.vcount());
    for (int v = 0; v < a.vcount(); ++v) CHECK(a.pts[v] == b.pts[v]);
  }
  SUBCASE("jitter keeps the cell count and is deterministic in the seed") {
    const PlanarLattice a = gen_perturbed_lattice(4, 4, 0.2, 7);
    const PlanarLattice b = gen_perturbed_lattice(4, 4, 0.2, 7);
    const PlanarLattice c = gen_perturbed_lattice(4, 4, 0.2, 8);
    CHECK(decompose_cells(a).cell_count() == 16);
    for (int v = 0; v < a.vcount(); ++v) CHECK(a.pts[v] == b.pts[v]);
    bool same = true;
    for (int v = 0; v < a.vcount(); ++v)
      if (!(a.pts[v] == c.pts[v])) same = false;
    CHECK_FALSE(same);
  }
  SUBCASE("extreme jitter either validates or fails after bounded retries") {
    try {
      const PlanarLattice lat = gen_perturbed_lattice(3, 3, 0.49, 5);
      CHECK(decompose_cells(lat).cell_count() == 9);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::Degenerate);
    }
  }
}

TEST_CASE("config sampling") {
  const CellDecomposition dec = decompose_cells(gen_square_lattice(4, 4));
  SUBCASE("p extremes") {
    const SiteConfig all = sample_site_config(dec, 1.0, 11);
    const SiteConfig none = sample_site_config(dec, 0.0, 11);
    for (int c = 0; c < dec.cell_count(); ++c) {
      CHECK(all.is_occupied(c));
      CHECK_FALSE(none.is_occupied(c));
    }
  }
  SUBCASE("deterministic in the key") {
    const SiteConfig a = sample_site_config(dec, 0.5, 123);
    const SiteConfig b = sample_site_config(dec, 0.5, 123);
    CHECK(a.occupied == b.occupied);
  }
}

TEST_CASE("experiment runs clean and reproduces bit-identically across threads") {
  ExperimentSpec spec;
  spec.generator.kind = GeneratorSpec::Kind::Square;
  spec.generator.n = 5;
  spec.generator.m = 5;
  spec.rect_margin = 0.5;
  spec.mode = ExperimentSpec::Mode::Site;
  spec.p = 0.5;
  spec.trials = 400;
  spec.seed = 99;
  spec.checks = {"site_duality", "dual_axioms"};

  spec.threads = 1;
  const ExperimentReport r1 = run_experiment(spec);
  CHECK(r1.all_pass());
  spec.threads = 4;
  const ExperimentReport r4 = run_experiment(spec);
  spec.threads = 8;
  const ExperimentReport r8 = run_experiment(spec);
  CHECK(r1.to_json(false) == r4.to_json(false));
  CHECK(r1.to_json(false) == r8.to_json(false));

  // complementary events sum to the trial count exactly
  for (const auto& c : r1.checks) {
    if (c.name != "site_duality") continue;
    CHECK(c.events.at("LR_plus_occupied") + c.events.at("TD_star_vacant") == c.trials);
    CHECK(c.events.at("LR_star_occupied") + c.events.at("TD_plus_vacant") == c.trials);
  }
}

TEST_CASE("experiment covers the structural checks") {
  ExperimentSpec spec;
  spec.generator.kind = GeneratorSpec::Kind::Square;
  spec.generator.n = 5;
  spec.generator.m = 5;
  spec.mode = ExperimentSpec::Mode::Site;
  spec.p = 0.4;
  spec.trials = 60;
  spec.seed = 5;
  spec.threads = 2;
  spec.checks = {"boundary_star", "boundary_plus", "euler", "surround_star", "surround_plus"};
  const ExperimentReport rep = run_experiment(spec);
  INFO(rep.summary());
  CHECK(rep.all_pass());
}

TEST_CASE("bond experiment exhaustive on the 4x4 cover") {
  ExperimentSpec spec;
  spec.generator.kind = GeneratorSpec::Kind::Square;
  spec.generator.n = 4;
  spec.generator.m = 4;
  spec.rect_margin = 0.5;
  spec.mode = ExperimentSpec::Mode::Bond;
  spec.exhaustive = true;
  spec.seed = 3;
  spec.threads = 4;
  spec.checks = {"bond_duality"};
  const ExperimentReport rep = run_experiment(spec);
  CHECK(rep.trials == 4096);
  CHECK(rep.all_pass());
}

TEST_CASE("experiment spec json round trip") {
  const std::string text = R"({
    "generator": {"type": "perturbed", "n": 6, "m": 5, "delta": 0.2, "seed": 4},
    "rectangle": {"margin": 0.5},
    "mode": {"kind": "site", "p": 0.3},
    "trials": 50, "seed": 12, "threads": 2,
    "checks": ["site_duality"]
  })";
  const ExperimentSpec spec = parse_experiment_spec(text);
  CHECK(spec.generator.kind == GeneratorSpec::Kind::Perturbed);
  CHECK(spec.generator.delta == doctest::Approx(0.2));
  CHECK(spec.p == 0.3);
  CHECK(spec.rect_margin.has_value());
  const ExperimentReport rep = run_experiment(spec);
  CHECK(rep.all_pass());

  CHECK_THROWS_AS((void)parse_experiment_spec("{nope"), Error);
  CHECK_THROWS_AS((void)parse_experiment_spec(R"({"generator":{"type":"hex"}})"), Error);
}
