#include "perc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "perc/io.hpp"
#include "perc/rng.hpp"

namespace perc {

using nlohmann::json;

namespace {

const std::set<std::string> kKnownChecks = {
    "boundary_star", "boundary_plus", "euler",         "surround_star",
    "surround_plus", "site_duality",  "bond_duality",  "dual_axioms"};

struct Context {
  const ExperimentSpec* spec = nullptr;
  CellDecomposition dec;
  std::optional<DualLattice> dual;
  std::optional<DualityReport> axioms;
  std::optional<RectangleCover> cover;
  int origin = -1;                 // central cell for component checks
  std::vector<char> hull_clear;    // cells with no vertex on the lattice hull
  std::vector<int> hull_clear_ids;
};

std::vector<char> cells_clear_of_hull(const CellDecomposition& dec) {
  const FaceSet fs = trace_faces(dec.lattice.rot, dec.lattice.pts);
  std::vector<char> on_hull(dec.lattice.vcount(), 0);
  for (int v : fs.faces[fs.outer]) on_hull[v] = 1;
  std::vector<char> clear(dec.cell_count(), 1);
  for (int c = 0; c < dec.cell_count(); ++c)
    for (int v : dec.cells[c].boundary.v)
      if (on_hull[v]) clear[c] = 0;
  return clear;
}

std::string describe_site(const CellDecomposition& dec, const SiteConfig& cfg) {
  std::ostringstream os;
  os << "occupied:";
  for (int c = 0; c < dec.cell_count(); ++c)
    if (cfg.is_occupied(c)) os << ' ' << dec.cell_label(c);
  return os.str();
}

std::string describe_bonds(const CellDecomposition& dec, const BondConfig& bonds) {
  std::ostringstream os;
  os << "open:";
  for (int e = 0; e < dec.lattice.ecount(); ++e)
    if (bonds.is_open(e))
      os << ' ' << dec.lattice.ids[dec.lattice.edges[e].first] << ':'
         << dec.lattice.ids[dec.lattice.edges[e].second];
  return os.str();
}

struct LocalStats {
  long trials = 0;
  long violations = 0;
  long skipped = 0;
  std::map<std::string, long> events;
  std::optional<Counterexample> cex;

  void violation(long trial, std::uint64_t key, const std::string& what) {
    ++violations;
    if (!cex || trial < cex->trial) cex = Counterexample{trial, key, what};
  }
  void merge(const LocalStats& o) {
    trials += o.trials;
    violations += o.violations;
    skipped += o.skipped;
    for (const auto& [k, v] : o.events) events[k] += v;
    if (o.cex && (!cex || o.cex->trial < cex->trial)) cex = o.cex;
  }
};

SiteConfig component_config(const Context& ctx, std::uint64_t key, bool interior_only) {
  SiteConfig cfg = sample_site_config(ctx.dec, ctx.spec->p, key, ctx.origin);
  if (interior_only) {
    for (int c = 0; c < ctx.dec.cell_count(); ++c)
      if (!ctx.hull_clear[c]) cfg.occupied[c] = 0;
    cfg.occupied[ctx.origin] = 1;
  }
  return cfg;
}

void run_boundary_checks(const Context& ctx, long trial, std::uint64_t key, bool with_plus,
                         bool with_euler, LocalStats& star_stats, LocalStats* plus_stats,
                         LocalStats* euler_stats) {
  const SiteConfig cfg = component_config(ctx, key, false);
  const CellComponent comp = component(ctx.dec, cfg, AdjMode::Star);
  const OutermostBoundary ob = outermost_boundary_star(ctx.dec, comp);
  ++star_stats.trials;
  for (const auto& why : verify_star_boundary(ctx.dec, cfg, comp, ob))
    star_stats.violation(trial, key, why + " | " + describe_site(ctx.dec, cfg));

  if (with_euler && euler_stats) {
    ++euler_stats->trials;
    const std::vector<int> walk = euler_circuit(ob);
    for (const auto& why : verify_euler_circuit(ctx.dec, ob, walk))
      euler_stats->violation(trial, key, why + " | " + describe_site(ctx.dec, cfg));
  }
  if (with_plus && plus_stats) {
    ++plus_stats->trials;
    const CellComponent pcomp = component(ctx.dec, cfg, AdjMode::Plus);
    const Cycle boundary = outermost_boundary_plus(ctx.dec, pcomp);
    for (const auto& why : verify_plus_boundary(ctx.dec, cfg, pcomp, boundary))
      plus_stats->violation(trial, key, why + " | " + describe_site(ctx.dec, cfg));
    // consistency: a plus-connected star component has the same single cycle
    const CellComponent scomp = component(ctx.dec, cfg, AdjMode::Star);
    if (scomp.cells == pcomp.cells) {
      const OutermostBoundary ob2 = outermost_boundary_star(ctx.dec, scomp);
      if (ob2.cycles.size() != 1 || !(ob2.cycles.front() == boundary))
        plus_stats->violation(trial, key, "star and plus boundaries disagree on a plus component");
    }
  }
}

void run_surround_star(const Context& ctx, long trial, std::uint64_t key, LocalStats& st) {
  if (!ctx.dual || !ctx.dual->valid() || !ctx.axioms || !ctx.axioms->all_pass() ||
      !ctx.hull_clear[ctx.origin]) {
    ++st.skipped;
    return;
  }
  const SiteConfig cfg = component_config(ctx, key, true);
  const CellComponent comp = component(ctx.dec, cfg, AdjMode::Star);
  ++st.trials;
  try {
    const DualCycle pout = vacant_dual_cycle_around_star(ctx.dec, *ctx.dual, comp);
    for (const auto& why : verify_surrounding_dual_cycle(ctx.dec, *ctx.dual, cfg, comp, pout))
      st.violation(trial, key, why + " | " + describe_site(ctx.dec, cfg));
  } catch (const Error& e) {
    if (e.code() == Errc::HypothesisViolated) {
      ++st.skipped;
      --st.trials;
    } else {
      st.violation(trial, key, std::string(e.what()) + " | " + describe_site(ctx.dec, cfg));
    }
  }
}

void run_surround_plus(const Context& ctx, long trial, std::uint64_t key, LocalStats& st) {
  if (!ctx.hull_clear[ctx.origin]) {
    ++st.skipped;
    return;
  }
  const SiteConfig cfg = component_config(ctx, key, true);
  const CellComponent comp = component(ctx.dec, cfg, AdjMode::Plus);
  ++st.trials;
  try {
    const std::vector<int> ring = vacant_cell_cycle_around_plus(ctx.dec, cfg, comp);
    for (const auto& why : verify_surrounding_cell_ring(ctx.dec, cfg, comp, ring))
      st.violation(trial, key, why + " | " + describe_site(ctx.dec, cfg));
  } catch (const Error& e) {
    st.violation(trial, key, std::string(e.what()) + " | " + describe_site(ctx.dec, cfg));
  }
}

void run_site_duality(const Context& ctx, long trial, std::uint64_t key, LocalStats& st) {
  SiteConfig cfg = ctx.spec->exhaustive
                       ? site_config_from_mask(ctx.dec, *ctx.cover, static_cast<std::uint64_t>(trial))
                       : sample_site_config(ctx.dec, *ctx.cover, ctx.spec->p, key);
  ++st.trials;
  const SiteCrossingReport rep = check_site_duality(ctx.dec, *ctx.cover, cfg);
  st.events["LR_plus_occupied"] += rep.lr_plus_occupied;
  st.events["TD_star_vacant"] += rep.td_star_vacant;
  st.events["LR_star_occupied"] += rep.lr_star_occupied;
  st.events["TD_plus_vacant"] += rep.td_plus_vacant;
  if (!rep.pair_one_exclusive())
    st.violation(trial, key,
                 "LR+(O)/TD*(V) not exclusive | " + describe_site(ctx.dec, cfg));
  if (!rep.pair_two_exclusive())
    st.violation(trial, key,
                 "LR*(O)/TD+(V) not exclusive | " + describe_site(ctx.dec, cfg));
}

void run_bond_duality(const Context& ctx, long trial, std::uint64_t key, LocalStats& st) {
  BondConfig bonds = ctx.spec->exhaustive
                         ? bond_config_from_mask(ctx.dec, *ctx.cover, static_cast<std::uint64_t>(trial))
                         : sample_bond_config(ctx.dec, *ctx.cover, ctx.spec->p, key);
  ++st.trials;
  const BondCrossingReport rep = check_bond_duality(ctx.dec, *ctx.cover, *ctx.dual, bonds);
  st.events["LR_open"] += rep.lr;
  st.events["TD_dual_closed"] += rep.td_dual;
  if (!rep.exclusive())
    st.violation(trial, key, "LR/TD_d not exclusive | " + describe_bonds(ctx.dec, bonds));
}

}  // namespace

PlanarLattice build_generator(const GeneratorSpec& gen) {
  switch (gen.kind) {
    case GeneratorSpec::Kind::Square: return gen_square_lattice(gen.n, gen.m);
    case GeneratorSpec::Kind::Perturbed: return gen_perturbed_lattice(gen.n, gen.m, gen.delta, gen.seed);
    case GeneratorSpec::Kind::File: {
      const LatticeDocument doc = parse_lattice_file(gen.path);
      return doc.lattice;
    }
  }
  fail(Errc::InvalidSpec, "unknown generator");
}

bool ExperimentReport::all_pass() const {
  for (const auto& c : checks)
    if (c.violations > 0) return false;
  return true;
}

std::string ExperimentReport::to_json(bool include_runtime) const {
  json j;
  j["lattice"] = {{"vertices", lattice_vertices}, {"edges", lattice_edges}, {"cells", lattice_cells}};
  j["trials"] = trials;
  j["seed"] = seed;
  j["exhaustive"] = exhaustive;
  j["checks"] = json::array();
  for (const auto& c : checks) {
    json jc;
    jc["name"] = c.name;
    jc["trials"] = c.trials;
    jc["violations"] = c.violations;
    jc["skipped"] = c.skipped;
    if (!c.events.empty()) {
      jc["events"] = c.events;
      json est = json::object();
      for (const auto& [k, v] : c.events) {
        if (c.trials <= 0) continue;
        const double n = static_cast<double>(c.trials);
        const double ph = static_cast<double>(v) / n;
        const double z = 1.959963984540054;  // 95% normal quantile
        const double den = 1.0 + z * z / n;
        const double center = (ph + z * z / (2 * n)) / den;
        const double half = z * std::sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / den;
        est[k] = {{"p", ph}, {"ci95", {center - half, center + half}}};
      }
      jc["estimates"] = est;
    }
    if (c.first_counterexample) {
      jc["first_counterexample"] = {{"trial", c.first_counterexample->trial},
                                    {"key", c.first_counterexample->key},
                                    {"what", c.first_counterexample->description}};
    } else {
      jc["first_counterexample"] = nullptr;
    }
    j["checks"].push_back(jc);
  }
  if (include_runtime) {
    j["runtime"] = {{"wall_seconds", wall_seconds}, {"threads", threads}};
  }
  return j.dump(2);
}

std::string ExperimentReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << c.name << ": trials=" << c.trials << " violations=" << c.violations;
    if (c.skipped) os << " skipped=" << c.skipped;
    for (const auto& [k, v] : c.events) os << ' ' << k << '=' << v;
    if (c.first_counterexample)
      os << "  [first: trial " << c.first_counterexample->trial << ": "
         << c.first_counterexample->description << ']';
    os << '\n';
  }
  return os.str();
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& c : spec.checks)
    if (!kKnownChecks.count(c)) fail(Errc::InvalidSpec, "unknown check: " + c);
  if (spec.checks.empty()) fail(Errc::InvalidSpec, "no checks requested");
  if (spec.trials < 1 && !spec.exhaustive) fail(Errc::InvalidSpec, "trials must be >= 1");
  if (!(spec.p >= 0 && spec.p <= 1)) fail(Errc::InvalidSpec, "p out of range");

  auto has = [&](const std::string& name) {
    return std::find(spec.checks.begin(), spec.checks.end(), name) != spec.checks.end();
  };

  Context ctx;
  ctx.spec = &spec;
  ctx.dec = decompose_cells(build_generator(spec.generator));
  ctx.origin = central_cell(ctx.dec);
  ctx.hull_clear = cells_clear_of_hull(ctx.dec);

  const bool needs_dual =
      has("surround_star") || has("bond_duality") || has("dual_axioms") || has("site_duality");
  if (needs_dual) {
    ctx.dual = construct_dual(ctx.dec);
    ctx.axioms = verify_duality_properties(ctx.dec, *ctx.dual);
  }
  const bool needs_cover = has("site_duality") || has("bond_duality");
  if (needs_cover) {
    Rect r;
    if (spec.rect) {
      r = *spec.rect;
    } else if (spec.rect_margin) {
      double x0 = ctx.dec.lattice.pts[0].x, x1 = x0, y0 = ctx.dec.lattice.pts[0].y, y1 = y0;
      for (const Point2& p : ctx.dec.lattice.pts) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
      }
      r = Rect{x0 + *spec.rect_margin, y0 + *spec.rect_margin, x1 - *spec.rect_margin,
               y1 - *spec.rect_margin};
    } else {
      fail(Errc::InvalidSpec, "crossing checks need a rectangle");
    }
    ctx.cover = build_rectangle_cover(ctx.dec, r);
    if ((has("site_duality") || has("bond_duality")) && (!ctx.axioms || !ctx.axioms->all_pass()))
      fail(Errc::PreconditionViolated, "duality axioms fail:\n" + ctx.axioms->summary());
  }

  long total = spec.trials;
  if (spec.exhaustive) {
    if (!ctx.cover) fail(Errc::InvalidSpec, "exhaustive mode needs a rectangle cover");
    const size_t k = spec.mode == ExperimentSpec::Mode::Site ? ctx.cover->interior_cells.size()
                                                             : ctx.cover->interior_edges.size();
    if (k > 22) fail(Errc::InvalidSpec, "exhaustive space too large: 2^" + std::to_string(k));
    total = 1L << k;
    for (const auto& c : spec.checks)
      if (c != "site_duality" && c != "bond_duality" && c != "dual_axioms")
        fail(Errc::InvalidSpec, "exhaustive mode supports only crossing duality checks");
  }

  struct NamedLocal {
    LocalStats boundary_star, boundary_plus, euler, surround_star, surround_plus, site_duality,
        bond_duality;
  };

  const int workers = std::max(1, spec.threads);
  std::vector<NamedLocal> locals(workers);
  std::vector<std::thread> pool;
  const bool site_mode = spec.mode == ExperimentSpec::Mode::Site;

  auto work = [&](int w) {
    const long lo = total * w / workers;
    const long hi = total * (w + 1) / workers;
    NamedLocal& L = locals[w];
    for (long trial = lo; trial < hi; ++trial) {
      const std::uint64_t key = derive_key(spec.seed, 1, static_cast<std::uint64_t>(trial));
      if (site_mode && (has("boundary_star") || has("boundary_plus") || has("euler")))
        run_boundary_checks(ctx, trial, key, has("boundary_plus"), has("euler"), L.boundary_star,
                            &L.boundary_plus, &L.euler);
      if (site_mode && has("surround_star")) run_surround_star(ctx, trial, key, L.surround_star);
      if (site_mode && has("surround_plus")) run_surround_plus(ctx, trial, key, L.surround_plus);
      if (site_mode && has("site_duality")) run_site_duality(ctx, trial, key, L.site_duality);
      if (!site_mode && has("bond_duality")) run_bond_duality(ctx, trial, key, L.bond_duality);
    }
  };
  for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
  for (auto& t : pool) t.join();

  ExperimentReport rep;
  rep.lattice_vertices = ctx.dec.lattice.vcount();
  rep.lattice_edges = ctx.dec.lattice.ecount();
  rep.lattice_cells = ctx.dec.cell_count();
  rep.trials = total;
  rep.seed = spec.seed;
  rep.exhaustive = spec.exhaustive;
  rep.threads = spec.threads;

  auto collect = [&](const std::string& name, LocalStats NamedLocal::*member) {
    if (!has(name)) return;
    CheckStats cs;
    cs.name = name;
    LocalStats all;
    for (const auto& L : locals) all.merge(L.*member);
    cs.trials = all.trials;
    cs.violations = all.violations;
    cs.skipped = all.skipped;
    cs.events = all.events;
    cs.first_counterexample = all.cex;
    rep.checks.push_back(std::move(cs));
  };
  if (has("dual_axioms")) {
    CheckStats cs;
    cs.name = "dual_axioms";
    cs.trials = 1;
    if (!ctx.axioms || !ctx.axioms->all_pass()) {
      cs.violations = 1;
      cs.first_counterexample =
          Counterexample{0, spec.seed, ctx.axioms ? ctx.axioms->summary() : "no dual"};
    }
    rep.checks.push_back(std::move(cs));
  }
  collect("boundary_star", &NamedLocal::boundary_star);
  collect("boundary_plus", &NamedLocal::boundary_plus);
  collect("euler", &NamedLocal::euler);
  collect("surround_star", &NamedLocal::surround_star);
  collect("surround_plus", &NamedLocal::surround_plus);
  collect("site_duality", &NamedLocal::site_duality);
  collect("bond_duality", &NamedLocal::bond_duality);

  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

ExperimentSpec parse_experiment_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(Errc::SyntaxError, std::string("experiment spec: ") + e.what());
  }
  try {
    ExperimentSpec spec;
    const json& g = j.at("generator");
    const std::string kind = g.at("type").get<std::string>();
    if (kind == "square") {
      spec.generator.kind = GeneratorSpec::Kind::Square;
      spec.generator.n = g.at("n").get<int>();
      spec.generator.m = g.at("m").get<int>();
    } else if (kind == "perturbed") {
      spec.generator.kind = GeneratorSpec::Kind::Perturbed;
      spec.generator.n = g.at("n").get<int>();
      spec.generator.m = g.at("m").get<int>();
      spec.generator.delta = g.at("delta").get<double>();
      spec.generator.seed = g.value("seed", 0ULL);
    } else if (kind == "file") {
      spec.generator.kind = GeneratorSpec::Kind::File;
      spec.generator.path = g.at("path").get<std::string>();
    } else {
      fail(Errc::InvalidSpec, "unknown generator type: " + kind);
    }
    if (j.contains("rectangle")) {
      const json& r = j["rectangle"];
      if (r.contains("margin")) {
        spec.rect_margin = r["margin"].get<double>();
      } else {
        spec.rect = Rect{r.at("x0").get<double>(), r.at("y0").get<double>(),
                         r.at("x1").get<double>(), r.at("y1").get<double>()};
      }
    }
    if (j.contains("mode")) {
      const json& m = j["mode"];
      const std::string kindm = m.at("kind").get<std::string>();
      if (kindm == "site")
        spec.mode = ExperimentSpec::Mode::Site;
      else if (kindm == "bond")
        spec.mode = ExperimentSpec::Mode::Bond;
      else
        fail(Errc::InvalidSpec, "unknown mode: " + kindm);
      spec.p = m.value("p", 0.5);
    }
    spec.trials = j.value("trials", 1000L);
    spec.seed = j.value("seed", 1ULL);
    spec.exhaustive = j.value("exhaustive", false);
    spec.threads = j.value("threads", 1);
    if (j.contains("checks"))
      for (const auto& c : j["checks"]) spec.checks.push_back(c.get<std::string>());
    return spec;
  } catch (const json::exception& e) {
    fail(Errc::InvalidSpec, std::string("experiment spec: ") + e.what());
  }
}

}  // namespace perc
