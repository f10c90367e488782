#include "perc/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace perc {

namespace {

[[noreturn]] void syntax(int line, const std::string& msg) {
  fail(Errc::SyntaxError, "line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string t;
  while (is >> t) {
    if (t[0] == '#') break;
    out.push_back(t);
  }
  return out;
}

}  // namespace

LatticeDocument parse_lattice(const std::string& text) {
  std::vector<std::pair<VertexId, Point2>> verts;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<std::pair<int, std::pair<VertexId, VertexId>>> edge_lines;
  std::vector<std::pair<int, VertexId>> deferred_refs;
  std::map<std::string, RawSiteConfig> site_configs;
  std::map<std::string, RawBondConfig> bond_configs;
  std::set<VertexId> known;
  bool versioned = false;

  std::istringstream is(text);
  std::string line;
  int ln = 0;
  while (std::getline(is, line)) {
    ++ln;
    const auto tok = tokens_of(line);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];
    auto want = [&](size_t n) {
      if (tok.size() != n) syntax(ln, "'" + kw + "' expects " + std::to_string(n - 1) + " fields");
    };
    try {
      if (kw == "version") {
        want(2);
        if (tok[1] != "1") syntax(ln, "unsupported version " + tok[1]);
        versioned = true;
      } else if (kw == "vertex") {
        want(4);
        const VertexId id = std::stoll(tok[1]);
        if (!known.insert(id).second) syntax(ln, "duplicate vertex id " + tok[1]);
        verts.push_back({id, Point2{std::stod(tok[2]), std::stod(tok[3])}});
      } else if (kw == "edge") {
        want(3);
        const VertexId a = std::stoll(tok[1]);
        const VertexId b = std::stoll(tok[2]);
        edges.push_back({a, b});
        edge_lines.push_back({ln, {a, b}});
      } else if (kw == "config") {
        if (tok.size() < 4) syntax(ln, "config needs a kind, a name and a member list");
        const std::string& kind = tok[1];
        const std::string& name = tok[2];
        size_t i = 3;
        if (kind == "site") {
          RawSiteConfig raw;
          if (i < tok.size() && tok[i] == "origin") {
            if (i + 1 >= tok.size()) syntax(ln, "origin needs a cell id");
            raw.origin = tok[i + 1];
            i += 2;
          }
          if (i >= tok.size() || tok[i] != "occupied") syntax(ln, "expected 'occupied'");
          for (++i; i < tok.size(); ++i) raw.occupied.push_back(tok[i]);
          site_configs[name] = std::move(raw);
        } else if (kind == "bond") {
          if (tok[i] != "open") syntax(ln, "expected 'open'");
          RawBondConfig raw;
          for (++i; i < tok.size(); ++i) {
            const auto colon = tok[i].find(':');
            if (colon == std::string::npos) syntax(ln, "bond edge must be a:b");
            const VertexId a = std::stoll(tok[i].substr(0, colon));
            const VertexId b = std::stoll(tok[i].substr(colon + 1));
            deferred_refs.push_back({ln, a});
            deferred_refs.push_back({ln, b});
            raw.open.push_back({a, b});
          }
          bond_configs[name] = std::move(raw);
        } else {
          syntax(ln, "unknown config kind " + kind);
        }
      } else {
        syntax(ln, "unknown keyword " + kw);
      }
    } catch (const std::invalid_argument&) {
      syntax(ln, "malformed number");
    } catch (const std::out_of_range&) {
      syntax(ln, "number out of range");
    }
  }
  if (!versioned) fail(Errc::SyntaxError, "missing 'version 1' header");
  // references may precede declarations; resolve once the document is read
  for (const auto& [ln, e] : edge_lines) {
    if (!known.count(e.first)) syntax(ln, "unknown vertex id " + std::to_string(e.first));
    if (!known.count(e.second)) syntax(ln, "unknown vertex id " + std::to_string(e.second));
  }
  for (const auto& [ln, id] : deferred_refs)
    if (!known.count(id)) syntax(ln, "unknown vertex id " + std::to_string(id));

  LatticeDocument doc;
  doc.lattice = validate_lattice(verts, edges);
  doc.site_configs = std::move(site_configs);
  doc.bond_configs = std::move(bond_configs);
  return doc;
}

LatticeDocument parse_lattice_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_lattice(buf.str());
}

namespace {

std::string fmt_coord(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string serialize_lattice(const LatticeDocument& doc) {
  std::ostringstream os;
  os << "version 1\n";
  for (int v = 0; v < doc.lattice.vcount(); ++v)
    os << "vertex " << doc.lattice.ids[v] << ' ' << fmt_coord(doc.lattice.pts[v].x) << ' '
       << fmt_coord(doc.lattice.pts[v].y) << '\n';
  for (const auto& [a, b] : doc.lattice.edges)
    os << "edge " << doc.lattice.ids[a] << ' ' << doc.lattice.ids[b] << '\n';
  for (const auto& [name, raw] : doc.site_configs) {
    os << "config site " << name;
    if (raw.origin) os << " origin " << *raw.origin;
    os << " occupied";
    std::vector<std::string> occ(raw.occupied);
    std::sort(occ.begin(), occ.end());
    for (const auto& c : occ) os << ' ' << c;
    os << '\n';
  }
  for (const auto& [name, raw] : doc.bond_configs) {
    os << "config bond " << name << " open";
    std::vector<std::pair<VertexId, VertexId>> open;
    for (auto [a, b] : raw.open) open.push_back({std::min(a, b), std::max(a, b)});
    std::sort(open.begin(), open.end());
    for (const auto& [a, b] : open) os << ' ' << a << ':' << b;
    os << '\n';
  }
  return os.str();
}

SiteConfig resolve_site_config(const CellDecomposition& dec, const RawSiteConfig& raw) {
  SiteConfig cfg;
  cfg.occupied.assign(dec.cell_count(), 0);
  for (const auto& label : raw.occupied) {
    const auto c = dec.cell_by_label(label);
    if (!c) fail(Errc::UnknownCell, "no cell with canonical id " + label);
    cfg.occupied[*c] = 1;
  }
  if (raw.origin) {
    const auto c = dec.cell_by_label(*raw.origin);
    if (!c) fail(Errc::UnknownCell, "no cell with canonical id " + *raw.origin);
    cfg.origin = *c;
    cfg.occupied[*c] = 1;
  }
  return cfg;
}

BondConfig resolve_bond_config(const CellDecomposition& dec, const RawBondConfig& raw) {
  BondConfig bonds;
  bonds.open.assign(dec.lattice.ecount(), 0);
  for (const auto& [ia, ib] : raw.open) {
    const auto a = dec.lattice.index_of_id.find(ia);
    const auto b = dec.lattice.index_of_id.find(ib);
    if (a == dec.lattice.index_of_id.end() || b == dec.lattice.index_of_id.end())
      fail(Errc::UnknownEdge, "bond endpoint not in lattice");
    const int e = dec.lattice.edge_id(a->second, b->second);
    if (e < 0)
      fail(Errc::UnknownEdge,
           "(" + std::to_string(ia) + "," + std::to_string(ib) + ") is not an edge");
    bonds.open[e] = 1;
  }
  return bonds;
}

}  // namespace perc
