#include "perc/generators.hpp"

#include <cmath>
#include <limits>

#include "perc/rng.hpp"

namespace perc {

namespace {

void square_frame(int n, int m, std::vector<std::pair<VertexId, Point2>>& verts,
                  std::vector<std::pair<VertexId, VertexId>>& edges) {
  auto id = [n](int i, int j) { return static_cast<VertexId>(j) * (n + 1) + i; };
  for (int j = 0; j <= m; ++j)
    for (int i = 0; i <= n; ++i)
      verts.push_back({id(i, j), Point2{static_cast<double>(i), static_cast<double>(j)}});
  for (int j = 0; j <= m; ++j)
    for (int i = 0; i < n; ++i) edges.push_back({id(i, j), id(i + 1, j)});
  for (int j = 0; j < m; ++j)
    for (int i = 0; i <= n; ++i) edges.push_back({id(i, j), id(i, j + 1)});
}

}  // namespace

PlanarLattice gen_square_lattice(int n, int m) {
  if (n < 1 || m < 1) fail(Errc::InvalidSpec, "square lattice needs n, m >= 1");
  std::vector<std::pair<VertexId, Point2>> verts;
  std::vector<std::pair<VertexId, VertexId>> edges;
  square_frame(n, m, verts, edges);
  return validate_lattice(verts, edges);
}

PlanarLattice gen_perturbed_lattice(int n, int m, double delta, std::uint64_t seed) {
  if (n < 1 || m < 1) fail(Errc::InvalidSpec, "perturbed lattice needs n, m >= 1");
  if (!(delta >= 0.0 && delta < 0.5)) fail(Errc::InvalidSpec, "jitter must satisfy 0 <= delta < 0.5");

  constexpr int kRetries = 16;
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    std::vector<std::pair<VertexId, Point2>> verts;
    std::vector<std::pair<VertexId, VertexId>> edges;
    square_frame(n, m, verts, edges);
    CounterRng rng(derive_key(seed, 0x70657274ULL, attempt));
    for (auto& [id, p] : verts) {
      const bool interior = p.x > 0 && p.x < n && p.y > 0 && p.y < m;
      if (!interior) continue;
      p.x += rng.uniform(-delta, delta);
      p.y += rng.uniform(-delta, delta);
    }
    try {
      return validate_lattice(verts, edges);
    } catch (const Error&) {
      // jitter broke the embedding; retry with a fresh sub-seed
    }
  }
  fail(Errc::Degenerate, "perturbed lattice failed validation after bounded retries");
}

SiteConfig sample_site_config(const CellDecomposition& dec, double p, std::uint64_t key,
                              std::optional<int> origin) {
  if (!(p >= 0.0 && p <= 1.0)) fail(Errc::InvalidSpec, "p out of range");
  SiteConfig cfg;
  cfg.occupied.assign(dec.cell_count(), 0);
  for (int c = 0; c < dec.cell_count(); ++c) {
    CounterRng rng(derive_key(key, 0x73697465ULL, c));
    cfg.occupied[c] = rng.bernoulli(p) ? 1 : 0;
  }
  if (origin) {
    cfg.origin = origin;
    cfg.occupied[*origin] = 1;
  }
  return cfg;
}

SiteConfig sample_site_config(const CellDecomposition& dec, const RectangleCover& cover, double p,
                              std::uint64_t key) {
  if (!(p >= 0.0 && p <= 1.0)) fail(Errc::InvalidSpec, "p out of range");
  SiteConfig cfg;
  cfg.occupied.assign(dec.cell_count(), 0);
  for (int c : cover.interior_cells) {
    CounterRng rng(derive_key(key, 0x73697465ULL, c));
    cfg.occupied[c] = rng.bernoulli(p) ? 1 : 0;
  }
  return cfg;
}

BondConfig sample_bond_config(const CellDecomposition& dec, const RectangleCover& cover, double p,
                              std::uint64_t key) {
  if (!(p >= 0.0 && p <= 1.0)) fail(Errc::InvalidSpec, "p out of range");
  BondConfig bonds;
  bonds.open.assign(dec.lattice.ecount(), 0);
  for (int e : cover.interior_edges) {
    CounterRng rng(derive_key(key, 0x626f6e64ULL, e));
    bonds.open[e] = rng.bernoulli(p) ? 1 : 0;
  }
  return bonds;
}

SiteConfig site_config_from_mask(const CellDecomposition& dec, const RectangleCover& cover,
                                 std::uint64_t mask) {
  SiteConfig cfg;
  cfg.occupied.assign(dec.cell_count(), 0);
  for (size_t k = 0; k < cover.interior_cells.size(); ++k)
    cfg.occupied[cover.interior_cells[k]] = (mask >> k) & 1 ? 1 : 0;
  return cfg;
}

BondConfig bond_config_from_mask(const CellDecomposition& dec, const RectangleCover& cover,
                                 std::uint64_t mask) {
  BondConfig bonds;
  bonds.open.assign(dec.lattice.ecount(), 0);
  for (size_t k = 0; k < cover.interior_edges.size(); ++k)
    bonds.open[cover.interior_edges[k]] = (mask >> k) & 1 ? 1 : 0;
  return bonds;
}

int central_cell(const CellDecomposition& dec) {
  if (dec.cell_count() == 0) fail(Errc::UnknownCell, "no cells");
  double x0 = dec.lattice.pts[0].x, x1 = x0, y0 = dec.lattice.pts[0].y, y1 = y0;
  for (const Point2& p : dec.lattice.pts) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const Point2 mid{(x0 + x1) / 2, (y0 + y1) / 2};
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int c = 0; c < dec.cell_count(); ++c) {
    const Point2& p = dec.cell_point[c];
    const double d = (p.x - mid.x) * (p.x - mid.x) + (p.y - mid.y) * (p.y - mid.y);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

}  // namespace perc
