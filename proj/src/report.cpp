#include "horosark/report.hpp"

#include <sstream>

#include <json.hpp>

namespace horosark {

using json = nlohmann::ordered_json;

namespace {

json jpoint(const ParamPoint& q) { return json::array({q.delta.str(), q.eps.str()}); }

json jdescriptor(const VarietyDescriptor& v) {
  json j;
  j["rank"] = v.dim;
  j["ambient_rank"] = v.ambient_rank;
  json lat = json::array();
  for (const auto& row : v.sublattice.basis) {
    json r = json::array();
    for (const auto& x : row) r.push_back(x.get_str());
    lat.push_back(std::move(r));
  }
  j["sublattice"] = std::move(lat);
  j["colors"] = v.colors;
  j["wall_contacts"] = v.wall_contacts;
  json cones = json::array();
  for (const auto& c : v.cones) {
    json jc;
    json gens = json::array();
    for (const auto& g : c.gens) {
      json r = json::array();
      for (const auto& x : g) r.push_back(x.get_str());
      gens.push_back(std::move(r));
    }
    jc["generators"] = std::move(gens);
    jc["colors"] = c.colors;
    cones.push_back(std::move(jc));
  }
  j["cones"] = std::move(cones);
  return j;
}

json jrelation(const TwoParamFamily& f, const Relation& r) {
  json j;
  json sup = json::array(), lam = json::array();
  for (size_t i = 0; i < r.support.size(); ++i) {
    sup.push_back(f.emb.rows[r.support[i]].id);
    lam.push_back(r.lambda[i].str());
  }
  j["support"] = std::move(sup);
  j["lambda"] = std::move(lam);
  j["line"] = {{"a", r.sum_c.str()}, {"b", r.sum_bpp.str()}, {"c", r.sum_b.str()}};
  return j;
}

std::string class_name(PointClassKind k) {
  switch (k) {
    case PointClassKind::Outside: return "Outside";
    case PointClassKind::U2: return "U2";
    case PointClassKind::U1: return "U1";
    case PointClassKind::U0: return "U0";
    case PointClassKind::U0prime: return "U0prime";
  }
  return "?";
}

}  // namespace

std::string wall_kind_name(WallKind k) {
  switch (k) {
    case WallKind::Fibration: return "fibration";
    case WallKind::Divisorial: return "divisorial";
    case WallKind::Flip: return "flip";
    case WallKind::Isomorphism: return "isomorphism";
  }
  return "?";
}

std::string row_ids(const TwoParamFamily& f, const std::vector<int>& rows) {
  std::string s = "{";
  for (size_t i = 0; i < rows.size(); ++i)
    s += (i ? "," : "") + std::to_string(f.emb.rows[rows[i]].id);
  return s + "}";
}

VarietyNamer::VarietyNamer(const TwoParamFamily& f, const std::vector<FixtureLabel>& labels) {
  for (const auto& l : labels) {
    HPolytope p = f.polytope_at(l.at);
    if (p.empty()) continue;
    names_.push_back({variety_from_polytope(f.emb, p), l.name});
  }
}

std::string VarietyNamer::name(const VarietyDescriptor& v) {
  for (const auto& [d, n] : names_)
    if (d == v) return n;
  std::string n = "V" + std::to_string(++counter_);
  names_.push_back({v, n});
  return n;
}

WallClassification classify_wall_sampled(const TwoParamFamily& f, const ParamPoint& q,
                                         const std::vector<int>& min_I, const Relation& rel) {
  if (rel.one_sided()) return classify_wall(f, q, min_I);
  ParamLine l = rel.line();
  RatVec nrm = {l.b, l.a};  // normal over (delta, eps)
  RatVec neg = {-l.b, -l.a};
  Rat hu = safe_step(f, q, nrm), hd = safe_step(f, q, neg);
  ParamPoint up{q.delta + hu * nrm[0], q.eps + hu * nrm[1]};
  ParamPoint dn{q.delta + hd * neg[0], q.eps + hd * neg[1]};
  if (classify_point(f, up).kind != PointClassKind::U2 ||
      classify_point(f, dn).kind != PointClassKind::U2)
    throw internal_error("classify_wall_sampled: side sample is not in U2");
  VarietyDescriptor a = f.variety_at(dn), b = f.variety_at(up);
  return classify_wall(f, q, min_I, &a, &b);
}

std::string report_check(const FixtureFile& fx, const TwoParamFamily& f, bool as_json) {
  GenericityReport gr = check_genericity(f);
  json j;
  j["fixture"] = fx.name;
  j["rows"] = f.p();
  j["lattice_rank"] = f.n();
  json jc = json::array();
  for (const auto& c : f.circs) {
    json e = json::array();
    for (int r : c) e.push_back(f.emb.rows[r].id);
    jc.push_back(std::move(e));
  }
  j["circuits"] = std::move(jc);
  j["bounded"] = true;  // construction of the family already enforced BDD
  j["genericity"] = gr.pass ? "pass" : "fail";
  j["violations"] = gr.violations;
  if (as_json) return j.dump(2) + "\n";
  std::ostringstream os;
  os << "fixture " << fx.name << ": p=" << f.p() << " n=" << f.n() << " circuits=" << f.circs.size()
     << "\n";
  os << "genericity: " << (gr.pass ? "pass" : "FAIL") << "\n";
  for (const auto& v : gr.violations) os << "  " << v << "\n";
  return os.str();
}

std::string report_classify(const TwoParamFamily& f, const ParamPoint& q, bool as_json) {
  PointClass pc = classify_point(f, q);
  json j;
  j["point"] = jpoint(q);
  j["class"] = class_name(pc.kind);
  if (pc.kind == PointClassKind::U1 || pc.kind == PointClassKind::U0) {
    json m = json::array();
    for (int r : pc.minimal) m.push_back(f.emb.rows[r].id);
    j["minimal"] = std::move(m);
  }
  if (as_json) return j.dump(2) + "\n";
  std::ostringstream os;
  os << class_name(pc.kind);
  if (pc.kind == PointClassKind::U1 || pc.kind == PointClassKind::U0)
    os << " minimal " << row_ids(f, pc.minimal);
  os << "\n";
  return os.str();
}

std::string report_decompose(const FixtureFile& fx, const TwoParamFamily& f,
                             const Decomposition& dec, bool as_json) {
  VarietyNamer namer(f, fx.labels);
  json j;
  j["fixture"] = fx.name;
  j["strip"] = {{"dmin", dec.strip.dmin.str()},
                {"dmax", dec.strip.dmax.str()},
                {"emin", dec.strip.emin.str()},
                {"emax", dec.strip.emax.str()}};
  json cells = json::array();
  for (const auto& c : dec.cells) {
    json jc;
    jc["name"] = namer.name(c.label);
    jc["sample"] = jpoint(c.sample);
    jc["descriptor"] = jdescriptor(c.label);
    cells.push_back(std::move(jc));
  }
  j["cells"] = std::move(cells);
  json walls = json::array();
  for (const auto& w : dec.walls) {
    ParamPoint mid{(w.from.delta + w.to.delta) / Rat(2), (w.from.eps + w.to.eps) / Rat(2)};
    WallClassification wc = classify_wall_sampled(f, mid, w.min_circuit, w.rel);
    json jw;
    json mi = json::array();
    for (int r : w.min_circuit) mi.push_back(f.emb.rows[r].id);
    jw["I"] = std::move(mi);
    jw["from"] = jpoint(w.from);
    jw["to"] = jpoint(w.to);
    jw["kind"] = wall_kind_name(wc.kind);
    jw["boundary"] = w.on_boundary;
    jw["relation"] = jrelation(f, w.rel);
    if (wc.kind == WallKind::Divisorial)
      jw["contracted_row"] = f.emb.rows[wc.contracted_row].id;
    if (wc.kind == WallKind::Fibration) jw["target"] = namer.name(wc.target);
    walls.push_back(std::move(jw));
  }
  j["walls"] = std::move(walls);
  json pts = json::array();
  for (const auto& p : dec.points) {
    json jp;
    jp["point"] = jpoint(p.q);
    jp["class"] = class_name(p.cls.kind);
    if (p.cls.kind == PointClassKind::U0) {
      json m = json::array();
      for (int r : p.cls.minimal) m.push_back(f.emb.rows[r].id);
      jp["L"] = std::move(m);
    }
    pts.push_back(std::move(jp));
  }
  j["points"] = std::move(pts);
  if (as_json) return j.dump(2) + "\n";
  std::ostringstream os;
  os << "decomposition of " << fx.name << ": " << dec.cells.size() << " cells, "
     << dec.walls.size() << " wall pieces, " << dec.points.size() << " special points\n";
  for (const auto& c : j["cells"])
    os << "  cell " << c["name"].get<std::string>() << " at (" << c["sample"][0].get<std::string>()
       << "," << c["sample"][1].get<std::string>() << ")\n";
  for (const auto& w : j["walls"]) {
    os << "  wall I=" << w["I"].dump() << " " << w["kind"].get<std::string>()
       << (w["boundary"].get<bool>() ? " (MPC)" : "") << " from (" << w["from"][0].get<std::string>()
       << "," << w["from"][1].get<std::string>() << ") to (" << w["to"][0].get<std::string>() << ","
       << w["to"][1].get<std::string>() << ")";
    if (w.contains("target")) os << " -> " << w["target"].get<std::string>();
    os << "\n";
  }
  for (const auto& p : j["points"]) {
    os << "  point (" << p["point"][0].get<std::string>() << "," << p["point"][1].get<std::string>()
       << ") " << p["class"].get<std::string>();
    if (p.contains("L")) os << " L=" << p["L"].dump();
    os << "\n";
  }
  return os.str();
}

std::string report_mmp(const FixtureFile& fx, const TwoParamFamily& f, const HmmpRun& run,
                       bool as_json) {
  VarietyNamer namer(f, fx.labels);
  json j;
  j["fixture"] = fx.name;
  j["delta"] = run.delta.str();
  json evs = json::array();
  for (const auto& ev : run.events) {
    json je;
    je["epsilon"] = ev.eps.str();
    je["kind"] = wall_kind_name(ev.wall.kind);
    json mi = json::array();
    for (int r : ev.wall.min_I) mi.push_back(f.emb.rows[r].id);
    je["I"] = std::move(mi);
    if (ev.wall.kind == WallKind::Divisorial)
      je["contracted_row"] = f.emb.rows[ev.wall.contracted_row].id;
    je["source"] = namer.name(ev.source);
    je["result"] = namer.name(ev.after);
    evs.push_back(std::move(je));
  }
  j["events"] = std::move(evs);
  j["eps_max"] = run.eps_max.str();
  j["terminal"] = namer.name(run.terminal);
  j["terminal_descriptor"] = jdescriptor(run.terminal);
  if (as_json) return j.dump(2) + "\n";
  std::ostringstream os;
  os << "MMP with scaling at delta = " << run.delta.str() << ":\n";
  for (const auto& ev : j["events"])
    os << "  eps = " << ev["epsilon"].get<std::string>() << ": "
       << ev["kind"].get<std::string>() << " I=" << ev["I"].dump() << "  "
       << ev["source"].get<std::string>() << " -> " << ev["result"].get<std::string>() << "\n";
  os << "eps_max = " << run.eps_max.str() << ", terminal fibration onto "
     << j["terminal"].get<std::string>() << "\n";
  return os.str();
}

std::string report_sarkisov(const FixtureFile& fx, const TwoParamFamily& f,
                            const SarkisovProgram& prog, bool as_json) {
  VarietyNamer namer(f, fx.labels);
  json j;
  j["fixture"] = fx.name;
  j["endpoints"] = {{"X", namer.name(prog.X)},
                    {"S", namer.name(prog.S)},
                    {"Y", namer.name(prog.Y)},
                    {"T", namer.name(prog.T)}};
  json chain = json::array();
  for (size_t i = 0; i < prog.chain.pieces.size(); ++i) {
    const auto& pc = prog.chain.pieces[i];
    json jp;
    jp["kind"] = "segment";
    json mi = json::array();
    for (int r : pc.I) mi.push_back(f.emb.rows[r].id);
    jp["I"] = std::move(mi);
    jp["from"] = jpoint(pc.from);
    jp["to"] = jpoint(pc.to);
    jp["target"] = namer.name(pc.target);
    chain.push_back(std::move(jp));
    if (i < prog.chain.anchors.size()) {
      const auto& an = prog.chain.anchors[i];
      json ja;
      ja["kind"] = "anchor";
      ja["point"] = jpoint(an.q);
      json ml = json::array();
      for (int r : an.L) ml.push_back(f.emb.rows[r].id);
      ja["L"] = std::move(ml);
      ja["vertex"] = an.vertex;
      chain.push_back(std::move(ja));
    }
  }
  j["mpc"] = std::move(chain);
  json links = json::array();
  for (const auto& link : prog.links) {
    json jl;
    jl["type"] = to_string(link.type);
    jl["anchor"] = jpoint(link.anchor.q);
    json ml = json::array();
    for (int r : link.anchor.L) ml.push_back(f.emb.rows[r].id);
    jl["L"] = std::move(ml);
    jl["vertex"] = link.anchor.vertex;
    jl["R"] = namer.name(link.R);
    jl["T0"] = namer.name(link.T0);
    jl["T1"] = namer.name(link.T1);
    json secs = json::array();
    for (const auto& s : link.sectors) secs.push_back(namer.name(s));
    jl["sectors"] = std::move(secs);
    json arrows = json::array();
    for (const auto& a : link.arrows) {
      json ja;
      ja["kind"] = wall_kind_name(a.kind);
      json wi = json::array();
      for (int r : a.wall_I) wi.push_back(f.emb.rows[r].id);
      ja["I"] = std::move(wi);
      if (a.kind == WallKind::Divisorial) ja["contracted_row"] = f.emb.rows[a.contracted_row].id;
      arrows.push_back(std::move(ja));
    }
    jl["arrows"] = std::move(arrows);
    json slopes = json::array();
    for (const auto& cls : link.partition.classes) {
      json js;
      json mem = json::array();
      for (int r : cls.members) mem.push_back(f.emb.rows[r].id);
      js["K_upper"] = std::move(mem);
      json comp = json::array();
      for (int r : cls.complement) comp.push_back(f.emb.rows[r].id);
      js["K_lower"] = std::move(comp);
      js["nu"] = cls.nu_neg_inf ? "-inf" : cls.nu.str();
      js["slope"] = cls.slope_inf ? "inf" : cls.slope.str();
      slopes.push_back(std::move(js));
    }
    jl["ray_partition"] = std::move(slopes);
    links.push_back(std::move(jl));
  }
  j["links"] = std::move(links);
  if (as_json) return j.dump(2) + "\n";
  std::ostringstream os;
  os << "Sarkisov program for " << fx.name << ": " << prog.links.size() << " links\n";
  os << "  from " << namer.name(prog.X) << "/" << namer.name(prog.S) << " to "
     << namer.name(prog.Y) << "/" << namer.name(prog.T) << "\n";
  for (const auto& jl : j["links"]) {
    os << "  link " << jl["type"].get<std::string>() << " at ("
       << jl["anchor"][0].get<std::string>() << "," << jl["anchor"][1].get<std::string>()
       << ") L=" << jl["L"].dump() << "  " << jl["sectors"].front().get<std::string>() << "/"
       << jl["T0"].get<std::string>() << " --> " << jl["sectors"].back().get<std::string>() << "/"
       << jl["T1"].get<std::string>() << "\n";
  }
  return os.str();
}

}  // namespace horosark
