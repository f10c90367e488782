#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "perc/crossings.hpp"

namespace perc {

struct RawSiteConfig {
  std::optional<std::string> origin;     // canonical cell label
  std::vector<std::string> occupied;     // canonical cell labels
};

struct RawBondConfig {
  std::vector<std::pair<VertexId, VertexId>> open;
};

struct LatticeDocument {
  PlanarLattice lattice;
  std::map<std::string, RawSiteConfig> site_configs;
  std::map<std::string, RawBondConfig> bond_configs;
};

/// Parses the versioned lattice document format; diagnostics carry line
/// numbers.  The lattice is validated on the way in.
LatticeDocument parse_lattice(const std::string& text);
LatticeDocument parse_lattice_file(const std::string& path);

/// Canonical serialization: vertices by id, edges lexicographic, configs by
/// name with sorted members.  parse(serialize(x)) == serialize-normal-form.
std::string serialize_lattice(const LatticeDocument& doc);

SiteConfig resolve_site_config(const CellDecomposition& dec, const RawSiteConfig& raw);
BondConfig resolve_bond_config(const CellDecomposition& dec, const RawBondConfig& raw);

// ---------------------------------------------------------------------------
// SVG rendering

struct SceneSpec {
  const CellDecomposition* dec = nullptr;
  const SiteConfig* site = nullptr;          // cells tinted by state
  const DualLattice* dual = nullptr;         // dashed overlay
  const RectangleCover* cover = nullptr;     // rectangle + class tints
  std::vector<Cycle> boundary_cycles;        // bold outline
  std::vector<int> euler_walk;               // arrowed circuit
  std::vector<int> witness_cells;            // highlighted cell path
  std::vector<int> witness_vertices;         // highlighted vertex path
  std::vector<std::vector<int>> dual_paths;  // highlighted dual paths (cell ids)
};

/// Deterministic, self-contained SVG; identical input produces identical
/// bytes.
std::string render_svg(const SceneSpec& scene);

}  // namespace perc
