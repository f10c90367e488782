// Command-line driver for lattice validation, cell decomposition, boundary
// extraction, dual construction, crossings and experiments.
//
// Exit codes: 0 success / all checks pass, 1 a property violation was found,
// 2 input or usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "perc/experiment.hpp"
#include "perc/io.hpp"

using namespace perc;
using nlohmann::json;

namespace {

struct InputOpts {
  std::string input;
  std::string config;
  double p = -1.0;
  std::uint64_t seed = 1;
  std::string origin_label;
};

struct LoadedInput {
  CellDecomposition dec;
  std::optional<LatticeDocument> doc;
};

// `input` is a lattice file path or a generator shorthand:
// square:NxM or perturbed:NxM:delta:seed.
LoadedInput load_input(const std::string& input) {
  if (input.rfind("square:", 0) == 0 || input.rfind("perturbed:", 0) == 0) {
    GeneratorSpec gen;
    const bool perturbed = input[0] == 'p';
    std::string rest = input.substr(input.find(':') + 1);
    gen.kind = perturbed ? GeneratorSpec::Kind::Perturbed : GeneratorSpec::Kind::Square;
    char x = 0;
    std::istringstream is(rest);
    if (!(is >> gen.n >> x >> gen.m) || x != 'x')
      fail(Errc::InvalidSpec, "generator shorthand must be square:NxM or perturbed:NxM:delta:seed");
    if (perturbed) {
      char c1 = 0, c2 = 0;
      if (!(is >> c1 >> gen.delta >> c2 >> gen.seed) || c1 != ':' || c2 != ':')
        fail(Errc::InvalidSpec, "perturbed shorthand is perturbed:NxM:delta:seed");
    }
    return {decompose_cells(build_generator(gen)), std::nullopt};
  }
  LatticeDocument doc = parse_lattice_file(input);
  CellDecomposition dec = decompose_cells(doc.lattice);
  return {std::move(dec), std::move(doc)};
}

SiteConfig site_config_for(const LoadedInput& in, const InputOpts& opt, bool needs_origin) {
  if (!opt.config.empty()) {
    if (!in.doc) fail(Errc::InvalidSpec, "--config requires a lattice file input");
    auto it = in.doc->site_configs.find(opt.config);
    if (it == in.doc->site_configs.end())
      fail(Errc::InvalidSpec, "no site config named " + opt.config);
    SiteConfig cfg = resolve_site_config(in.dec, it->second);
    if (needs_origin && !cfg.origin) fail(Errc::InvalidSpec, "config has no origin cell");
    return cfg;
  }
  if (opt.p < 0) fail(Errc::InvalidSpec, "provide --config NAME or --p P [--seed S]");
  std::optional<int> origin;
  if (!opt.origin_label.empty()) {
    origin = in.dec.cell_by_label(opt.origin_label);
    if (!origin) fail(Errc::UnknownCell, "no cell with canonical id " + opt.origin_label);
  } else if (needs_origin) {
    origin = central_cell(in.dec);
  }
  return sample_site_config(in.dec, opt.p, opt.seed, origin);
}

Rect rect_from(const CellDecomposition& dec, const std::vector<double>& rect_vals, double margin) {
  if (!rect_vals.empty()) {
    if (rect_vals.size() != 4) fail(Errc::InvalidSpec, "--rect needs x0,y0,x1,y1");
    return Rect{rect_vals[0], rect_vals[1], rect_vals[2], rect_vals[3]};
  }
  double x0 = dec.lattice.pts[0].x, x1 = x0, y0 = dec.lattice.pts[0].y, y1 = y0;
  for (const Point2& p : dec.lattice.pts) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  return Rect{x0 + margin, y0 + margin, x1 - margin, y1 - margin};
}

std::string label_path(const CellDecomposition& dec, const std::vector<int>& cells) {
  std::string out;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out += " ";
    out += dec.cell_label(cells[i]);
  }
  return out;
}

std::string id_path(const PlanarLattice& lat, const std::vector<int>& verts) {
  std::string out;
  for (size_t i = 0; i < verts.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(lat.ids[verts[i]]);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"perclat: percolation-lattice cell structure, boundaries, duals and crossings"};
  app.require_subcommand(1);

  InputOpts opt;
  std::vector<double> rect_vals;
  double margin = 0.5;
  bool as_json = false;
  std::string out_path, spec_path, mode = "star";
  bool with_euler = false, with_dual = false, verify = false, site = false, bond = false;

  auto add_input = [&](CLI::App* sub, bool with_config = true) {
    sub->add_option("input", opt.input, "lattice file, square:NxM, or perturbed:NxM:delta:seed")
        ->required();
    if (with_config) {
      sub->add_option("--config", opt.config, "named config from the lattice file");
      sub->add_option("--p", opt.p, "occupation/open probability for sampling");
      sub->add_option("--seed", opt.seed, "sampling seed");
      sub->add_option("--origin", opt.origin_label, "origin cell canonical id");
    }
  };

  CLI::App* validate = app.add_subcommand("validate", "validate a lattice");
  add_input(validate, false);

  CLI::App* cells = app.add_subcommand("cells", "print the canonical cell decomposition");
  add_input(cells, false);
  cells->add_flag("--json", as_json);

  CLI::App* shells = app.add_subcommand("shells", "print the shell cycles");
  add_input(shells, false);

  CLI::App* boundary = app.add_subcommand("boundary", "outermost boundary of a component");
  add_input(boundary);
  boundary->add_option("--mode", mode, "star|plus")->check(CLI::IsMember({"star", "plus"}));
  boundary->add_flag("--euler", with_euler, "also print the closed circuit");
  boundary->add_flag("--json", as_json);

  CLI::App* dual = app.add_subcommand("dual", "construct the dual lattice");
  add_input(dual, false);
  dual->add_flag("--verify", verify, "check the duality axioms");
  dual->add_flag("--json", as_json);

  CLI::App* surround = app.add_subcommand("surround", "vacant cycle surrounding a component");
  add_input(surround);
  surround->add_option("--mode", mode, "star|plus")->check(CLI::IsMember({"star", "plus"}));
  surround->add_flag("--json", as_json);

  CLI::App* cross = app.add_subcommand("cross", "rectangle crossing events");
  add_input(cross);
  cross->add_flag("--site", site, "site crossings (four events)");
  cross->add_flag("--bond", bond, "bond crossings (open path vs closed dual path)");
  cross->add_option("--rect", rect_vals, "x0,y0,x1,y1")->delimiter(',');
  cross->add_option("--margin", margin, "bounding-box inset when --rect is absent");
  cross->add_flag("--json", as_json);

  CLI::App* experiment = app.add_subcommand("experiment", "run an experiment spec");
  experiment->add_option("--spec", spec_path, "experiment spec json file")->required();
  experiment->add_flag("--json", as_json);

  CLI::App* render = app.add_subcommand("render", "render a scene to svg");
  add_input(render);
  render->add_option("--out", out_path, "output file")->required();
  render->add_option("--boundary", mode, "draw the star|plus boundary, or none")
      ->check(CLI::IsMember({"star", "plus", "none"}));
  render->add_flag("--euler", with_euler);
  render->add_flag("--dual", with_dual);
  render->add_option("--rect", rect_vals, "x0,y0,x1,y1")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) {
      try {
        const LoadedInput in = load_input(opt.input);
        std::cout << "valid: vertices=" << in.dec.lattice.vcount()
                  << " edges=" << in.dec.lattice.ecount() << " cells=" << in.dec.cell_count()
                  << '\n';
        return 0;
      } catch (const Error& e) {
        switch (e.code()) {
          case Errc::SyntaxError:
          case Errc::IoError:
          case Errc::InvalidSpec: throw;
          default:
            std::cout << "invalid: " << e.what() << '\n';
            return 1;
        }
      }
    }

    if (cells->parsed()) {
      const LoadedInput in = load_input(opt.input);
      if (as_json) {
        json j = json::array();
        for (int c = 0; c < in.dec.cell_count(); ++c) j.push_back(in.dec.cell_label(c));
        std::cout << j.dump(2) << '\n';
      } else {
        for (int c = 0; c < in.dec.cell_count(); ++c) std::cout << in.dec.cell_label(c) << '\n';
      }
      return 0;
    }

    if (shells->parsed()) {
      const LoadedInput in = load_input(opt.input);
      const ShellSet ss = shell_cycles(in.dec);
      for (const Cycle& s : ss.shells) std::cout << id_path(in.dec.lattice, s.v) << '\n';
      return 0;
    }

    if (boundary->parsed()) {
      const LoadedInput in = load_input(opt.input);
      const SiteConfig cfg = site_config_for(in, opt, true);
      const AdjMode m = mode == "plus" ? AdjMode::Plus : AdjMode::Star;
      const CellComponent comp = component(in.dec, cfg, m);
      json j;
      j["component_cells"] = json::array();
      for (int c : comp.cells) j["component_cells"].push_back(in.dec.cell_label(c));
      if (m == AdjMode::Star) {
        const OutermostBoundary ob = outermost_boundary_star(in.dec, comp);
        j["cycles"] = json::array();
        for (const Cycle& c : ob.cycles) j["cycles"].push_back(id_path(in.dec.lattice, c.v));
        if (with_euler) j["euler_circuit"] = id_path(in.dec.lattice, euler_circuit(ob));
      } else {
        const Cycle b = outermost_boundary_plus(in.dec, comp);
        j["cycles"] = json::array({id_path(in.dec.lattice, b.v)});
        if (with_euler) j["euler_circuit"] = j["cycles"][0];
      }
      if (as_json) {
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << "component: " << j["component_cells"].size() << " cells\n";
        for (const auto& c : j["cycles"]) std::cout << "cycle: " << c.get<std::string>() << '\n';
        if (with_euler) std::cout << "circuit: " << j["euler_circuit"].get<std::string>() << '\n';
      }
      return 0;
    }

    if (dual->parsed()) {
      const LoadedInput in = load_input(opt.input);
      const DualLattice dl = construct_dual(in.dec);
      if (!verify) {
        if (!dl.valid()) {
          std::cout << dual_failure_name(dl.failure->code) << ": " << dl.failure->detail << '\n';
          return 1;
        }
        std::cout << "dual: vertices=" << in.dec.cell_count() << " edges=" << dl.dual_edges.size()
                  << " cells=" << dl.cells.cell_count() << '\n';
        return 0;
      }
      const DualityReport rep = verify_duality_properties(in.dec, dl);
      if (as_json) {
        json j;
        auto put = [&](const char* name, const PropertyResult& r) {
          j[name] = {{"pass", r.pass}, {"witness", r.witness}};
        };
        put("a1", rep.a1);
        put("a2", rep.a2);
        put("a3", rep.a3);
        put("a4", rep.a4);
        put("a5", rep.a5);
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << rep.summary();
      }
      return rep.all_pass() ? 0 : 1;
    }

    if (surround->parsed()) {
      const LoadedInput in = load_input(opt.input);
      const SiteConfig cfg = site_config_for(in, opt, true);
      if (mode == "star") {
        const DualLattice dl = construct_dual(in.dec);
        const CellComponent comp = component(in.dec, cfg, AdjMode::Star);
        const DualCycle pout = vacant_dual_cycle_around_star(in.dec, dl, comp);
        std::cout << "surrounding dual cycle: " << label_path(in.dec, pout.cells) << '\n';
      } else {
        const CellComponent comp = component(in.dec, cfg, AdjMode::Plus);
        const std::vector<int> ring = vacant_cell_cycle_around_plus(in.dec, cfg, comp);
        std::cout << "surrounding cell ring: " << label_path(in.dec, ring) << '\n';
      }
      return 0;
    }

    if (cross->parsed()) {
      if (site == bond) fail(Errc::InvalidSpec, "choose exactly one of --site / --bond");
      const LoadedInput in = load_input(opt.input);
      const RectangleCover cover =
          build_rectangle_cover(in.dec, rect_from(in.dec, rect_vals, margin));
      json j;
      bool ok = true;
      if (site) {
        const SiteConfig cfg = site_config_for(in, opt, false);
        const SiteCrossingReport rep = check_site_duality(in.dec, cover, cfg);
        j["LR_plus_occupied"] = rep.lr_plus_occupied;
        j["TD_star_vacant"] = rep.td_star_vacant;
        j["LR_star_occupied"] = rep.lr_star_occupied;
        j["TD_plus_vacant"] = rep.td_plus_vacant;
        if (rep.w_lr_plus_o) j["witness_LR_plus_occupied"] = label_path(in.dec, *rep.w_lr_plus_o);
        if (rep.w_td_star_v) j["witness_TD_star_vacant"] = label_path(in.dec, *rep.w_td_star_v);
        if (rep.w_lr_star_o) j["witness_LR_star_occupied"] = label_path(in.dec, *rep.w_lr_star_o);
        if (rep.w_td_plus_v) j["witness_TD_plus_vacant"] = label_path(in.dec, *rep.w_td_plus_v);
        ok = rep.exclusive();
      } else {
        const DualLattice dl = construct_dual(in.dec);
        BondConfig bonds;
        if (!opt.config.empty()) {
          if (!in.doc) fail(Errc::InvalidSpec, "--config requires a lattice file input");
          auto it = in.doc->bond_configs.find(opt.config);
          if (it == in.doc->bond_configs.end())
            fail(Errc::InvalidSpec, "no bond config named " + opt.config);
          bonds = resolve_bond_config(in.dec, it->second);
        } else if (opt.p >= 0) {
          bonds = sample_bond_config(in.dec, cover, opt.p, opt.seed);
        } else {
          fail(Errc::InvalidSpec, "provide --config NAME or --p P [--seed S]");
        }
        const BondCrossingReport rep = check_bond_duality(in.dec, cover, dl, bonds);
        j["LR_open"] = rep.lr;
        j["TD_dual_closed"] = rep.td_dual;
        if (rep.w_lr) j["witness_LR_open"] = id_path(in.dec.lattice, *rep.w_lr);
        if (rep.w_td_dual) j["witness_TD_dual_closed"] = label_path(in.dec, *rep.w_td_dual);
        ok = rep.exclusive();
      }
      j["exclusive"] = ok;
      if (as_json)
        std::cout << j.dump(2) << '\n';
      else
        for (const auto& [k, v] : j.items()) std::cout << k << ": " << v.dump() << '\n';
      return ok ? 0 : 1;
    }

    if (experiment->parsed()) {
      std::ifstream f(spec_path);
      if (!f) fail(Errc::IoError, "cannot open " + spec_path);
      std::ostringstream buf;
      buf << f.rdbuf();
      const ExperimentSpec spec = parse_experiment_spec(buf.str());
      const ExperimentReport rep = run_experiment(spec);
      if (as_json)
        std::cout << rep.to_json(true) << '\n';
      else
        std::cout << rep.summary();
      return rep.all_pass() ? 0 : 1;
    }

    if (render->parsed()) {
      const LoadedInput in = load_input(opt.input);
      SceneSpec scene;
      scene.dec = &in.dec;
      std::optional<SiteConfig> cfg;
      std::optional<DualLattice> dl;
      std::optional<RectangleCover> cover;
      if (!opt.config.empty() || opt.p >= 0) {
        cfg = site_config_for(in, opt, mode != "none");
        scene.site = &*cfg;
        if (mode != "none") {
          const CellComponent comp =
              component(in.dec, *cfg, mode == "plus" ? AdjMode::Plus : AdjMode::Star);
          if (mode == "plus") {
            scene.boundary_cycles = {outermost_boundary_plus(in.dec, comp)};
          } else {
            const OutermostBoundary ob = outermost_boundary_star(in.dec, comp);
            scene.boundary_cycles = ob.cycles;
            if (with_euler) scene.euler_walk = euler_circuit(ob);
          }
        }
      }
      if (with_dual) {
        dl = construct_dual(in.dec);
        scene.dual = &*dl;
      }
      if (!rect_vals.empty()) {
        cover = build_rectangle_cover(in.dec, rect_from(in.dec, rect_vals, margin));
        scene.cover = &*cover;
      }
      std::ofstream out(out_path);
      if (!out) fail(Errc::IoError, "cannot open " + out_path);
      out << render_svg(scene);
      std::cout << "wrote " << out_path << '\n';
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
