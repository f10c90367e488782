#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "perc/checks.hpp"
#include "perc/generators.hpp"

namespace perc {

struct GeneratorSpec {
  enum class Kind { Square, Perturbed, File };
  Kind kind = Kind::Square;
  int n = 4, m = 4;
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::string path;
};

struct ExperimentSpec {
  GeneratorSpec generator;
  std::optional<Rect> rect;           // explicit rectangle
  std::optional<double> rect_margin;  // or bbox inset
  enum class Mode { Site, Bond };
  Mode mode = Mode::Site;
  double p = 0.5;
  long trials = 1000;
  std::uint64_t seed = 1;
  bool exhaustive = false;
  int threads = 1;
  std::vector<std::string> checks;  // boundary_star, boundary_plus, euler,
                                    // surround_star, surround_plus,
                                    // site_duality, bond_duality, dual_axioms
};

struct Counterexample {
  long trial = -1;
  std::uint64_t key = 0;
  std::string description;
};

struct CheckStats {
  std::string name;
  long trials = 0;
  long violations = 0;
  long skipped = 0;
  std::map<std::string, long> events;
  std::optional<Counterexample> first_counterexample;
};

struct ExperimentReport {
  std::vector<CheckStats> checks;
  int lattice_vertices = 0, lattice_edges = 0, lattice_cells = 0;
  long trials = 0;
  std::uint64_t seed = 0;
  bool exhaustive = false;
  double wall_seconds = 0.0;
  int threads = 1;

  bool all_pass() const;
  /// Canonical serialization; runtime fields (wall clock, thread count) are
  /// included only on request so reports compare bit-identically across
  /// parallelism levels.
  std::string to_json(bool include_runtime) const;
  std::string summary() const;
};

ExperimentReport run_experiment(const ExperimentSpec& spec);

ExperimentSpec parse_experiment_spec(const std::string& json_text);

PlanarLattice build_generator(const GeneratorSpec& gen);

}  // namespace perc
