#pragma once

#include <cstdint>

#include "perc/crossings.hpp"
#include "perc/lattice.hpp"

namespace perc {

/// n-by-m array of unit cells; vertex (i,j) gets id j*(n+1)+i.
PlanarLattice gen_square_lattice(int n, int m);

/// Square lattice with every strictly interior vertex jittered uniformly in
/// [-delta, delta]^2; revalidates and retries with derived sub-seeds.
PlanarLattice gen_perturbed_lattice(int n, int m, double delta, std::uint64_t seed);

enum class SampleScope { AllCells, InteriorCells };

/// Independent Bernoulli(p) occupancy.  With InteriorCells scope only the
/// cover's interior cells are sampled and everything else stays vacant.
SiteConfig sample_site_config(const CellDecomposition& dec, double p, std::uint64_t key,
                              std::optional<int> origin = std::nullopt);
SiteConfig sample_site_config(const CellDecomposition& dec, const RectangleCover& cover, double p,
                              std::uint64_t key);

/// Independent Bernoulli(p) open state on the cover's interior edges.
BondConfig sample_bond_config(const CellDecomposition& dec, const RectangleCover& cover, double p,
                              std::uint64_t key);

/// Mask-indexed configurations for exhaustive enumeration.
SiteConfig site_config_from_mask(const CellDecomposition& dec, const RectangleCover& cover,
                                 std::uint64_t mask);
BondConfig bond_config_from_mask(const CellDecomposition& dec, const RectangleCover& cover,
                                 std::uint64_t mask);

/// Cell whose interior point is nearest the bounding-box center; used as the
/// default origin for component experiments.
int central_cell(const CellDecomposition& dec);

}  // namespace perc
