#include "horosark/family.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace horosark {

namespace {

Relation normalize_relation(const std::vector<int>& support, RatVec lambda,
                            const TwoParamFamily& f) {
  Relation r;
  r.support = support;
  r.lambda = std::move(lambda);
  auto sums = [&](Relation& rel) {
    rel.sum_c = rel.sum_bpp = rel.sum_b = Rat();
    for (size_t i = 0; i < rel.support.size(); ++i) {
      int row = rel.support[i];
      rel.sum_c += rel.lambda[i] * f.C[row];
      rel.sum_bpp += rel.lambda[i] * f.Bpp[row];
      rel.sum_b += rel.lambda[i] * f.B[row];
    }
  };
  sums(r);
  if (!r.sum_c.is_zero()) {
    Rat s = Rat(1) / r.sum_c;
    for (auto& l : r.lambda) l *= s;
    sums(r);
  } else if (!r.sum_bpp.is_zero()) {
    Rat s = Rat(1) / r.sum_bpp;
    for (auto& l : r.lambda) l *= s;
    sums(r);
  }
  for (size_t i = 0; i < r.support.size(); ++i) {
    if (r.lambda[i].sign() > 0) r.pos.push_back(r.support[i]);
    if (r.lambda[i].sign() < 0) r.neg.push_back(r.support[i]);
  }
  return r;
}

}  // namespace

std::optional<ParamPoint> intersect(const ParamLine& l1, const ParamLine& l2) {
  // unknowns (eps, delta)
  Rat det = l1.a * l2.b - l2.a * l1.b;
  if (det.is_zero()) return std::nullopt;
  Rat eps = (-l1.c * l2.b + l2.c * l1.b) / det;
  Rat delta = (-l1.a * l2.c + l2.a * l1.c) / det;
  return ParamPoint{delta, eps};
}

TwoParamFamily TwoParamFamily::make(EmbeddingData emb, RatVec b, RatVec bprime) {
  emb.validate();
  if ((int)b.size() != emb.p() || (int)bprime.size() != emb.p())
    throw validation_error("B / B' length must equal the row count");
  TwoParamFamily f;
  f.emb = std::move(emb);
  f.B = std::move(b);
  f.Bprime = std::move(bprime);
  f.A = f.emb.pairing_matrix();
  f.C = f.emb.anticanonical();
  f.Bpp = f.Bprime - f.B;
  if (!is_bounded(f.A))
    throw validation_error("constraint matrix violates the boundedness condition (BDD)");
  f.circs = circuits(f.A);
  for (const auto& c : f.circs)
    f.circ_rel.push_back(normalize_relation(c, circuit_relation(f.A, c), f));
  return f;
}

RatVec TwoParamFamily::rhs(const ParamPoint& q) const {
  RatVec d(p());
  for (int r = 0; r < p(); ++r) d[r] = B[r] + q.delta * Bpp[r] + q.eps * C[r];
  return d;
}

HPolytope TwoParamFamily::polytope_at(const ParamPoint& q) const {
  return HPolytope(A, rhs(q));
}

VarietyDescriptor TwoParamFamily::variety_at(const ParamPoint& q) const {
  return variety_from_polytope(emb, polytope_at(q));
}

bool TwoParamFamily::in_Omega(const std::vector<int>& I, const ParamPoint& q) const {
  return face_nonempty(polytope_at(q), I, false);
}

bool TwoParamFamily::in_omega(const std::vector<int>& I, const ParamPoint& q) const {
  return face_nonempty(polytope_at(q), I, true);
}

bool TwoParamFamily::omega_nonempty(const std::vector<int>& I) const {
  std::vector<bool> in_i(p(), false);
  for (int i : I) in_i[i] = true;
  // vars: x (n), delta, eps, t; maximize t, t <= 1
  int nv = n() + 3;
  LinearProgram lp;
  lp.nvars = nv;
  lp.c.assign(nv, Rat());
  lp.c[nv - 1] = Rat(1);
  for (int r = 0; r < p(); ++r) {
    RatVec a = A.row(r);
    a.resize(nv);
    a[n()] = -Bpp[r];
    a[n() + 1] = -C[r];
    if (in_i[r]) {
      lp.add_eq(a, B[r]);
    } else {
      a[nv - 1] = Rat(-1);
      lp.add_ge(a, B[r]);
    }
  }
  RatVec cap(nv);
  cap[nv - 1] = Rat(-1);
  lp.add_ge(cap, Rat(-1));
  LpResult res = solve_lp(lp);
  return res.status == LpStatus::Optimal && res.value.sign() > 0;
}

Relation TwoParamFamily::relation_for(const std::vector<int>& I) const {
  auto ker = kernel_basis(A.select_rows(I).transpose());
  if (ker.size() != 1)
    throw internal_error("relation_for: image does not have codimension 1");
  std::vector<int> support;
  RatVec lambda;
  for (size_t i = 0; i < I.size(); ++i)
    if (!ker[0][i].is_zero()) {
      support.push_back(I[i]);
      lambda.push_back(ker[0][i]);
    }
  return normalize_relation(support, std::move(lambda), *this);
}

CarrierResult carrier_line(const TwoParamFamily& f, const std::vector<int>& I) {
  auto ker = kernel_basis(f.A.select_rows(I).transpose());
  int codim = (int)ker.size();
  if (codim == 0) throw validation_error("carrier_line: A_I is surjective, no carrier");
  CarrierResult out;
  std::vector<ParamLine> lines;
  for (auto& k : ker) {
    std::vector<int> support;
    RatVec lambda;
    for (size_t i = 0; i < I.size(); ++i)
      if (!k[i].is_zero()) {
        support.push_back(I[i]);
        lambda.push_back(k[i]);
      }
    Relation r = normalize_relation(support, std::move(lambda), f);
    lines.push_back(r.line());
    out.relations.push_back(std::move(r));
  }
  if (codim == 1) {
    const ParamLine& l = lines[0];
    if (l.proper()) out.carrier = l;
    else if (l.c.is_zero()) out.carrier = CarrierPlane{};
    else out.carrier = CarrierEmpty{};
    return out;
  }
  // Solve the stacked line system over (eps, delta).
  std::vector<RatVec> rows;
  RatVec rhs;
  for (const auto& l : lines) {
    rows.push_back({l.a, l.b});
    rhs.push_back(-l.c);
  }
  auto sol = solve_affine(RatMatrix::from_rows(rows), rhs);
  if (!sol) {
    out.carrier = CarrierEmpty{};
    return out;
  }
  int kdim = (int)sol->kernel.size();
  if (kdim == 0) {
    out.carrier = ParamPoint{sol->point[1], sol->point[0]};
  } else if (kdim == 1) {
    // degenerate: carrier is a line (genericity violation territory)
    const RatVec& dir = sol->kernel[0];  // (eps, delta) direction
    // line through point with direction dir: a*eps + b*delta + c = 0
    Rat a = dir[1], b = -dir[0];
    Rat c = -(a * sol->point[0] + b * sol->point[1]);
    out.carrier = ParamLine{a, b, c};
  } else {
    out.carrier = CarrierPlane{};
  }
  return out;
}

Region region(const TwoParamFamily& f, const std::vector<int>& I) {
  Region reg;
  reg.I = I;
  std::vector<bool> in_i(f.p(), false);
  for (int i : I) in_i[i] = true;
  LinSystem sys;
  sys.nvars = f.n() + 2;  // (x..., delta, eps)
  for (int r = 0; r < f.p(); ++r) {
    RatVec a = f.A.row(r);
    a.resize(sys.nvars);
    a[f.n()] = -f.Bpp[r];
    a[f.n() + 1] = -f.C[r];
    sys.add(std::move(a), f.B[r], in_i[r] ? RelOp::Eq : RelOp::Ge);
  }
  reg.omega_big = project_tail(std::move(sys), 2);

  int rk = rank(f.A.select_rows(I));
  if ((int)I.size() == rk) {
    reg.carrier.carrier = CarrierPlane{};  // surjective: carrier is everything
  } else {
    reg.carrier = carrier_line(f, I);
  }
  if (!f.omega_nonempty(I)) {
    reg.omega_dim = -1;
  } else if (std::holds_alternative<CarrierPlane>(reg.carrier.carrier)) {
    reg.omega_dim = 2;
  } else if (std::holds_alternative<ParamLine>(reg.carrier.carrier)) {
    reg.omega_dim = 1;
  } else if (std::holds_alternative<ParamPoint>(reg.carrier.carrier)) {
    reg.omega_dim = 0;
  } else {
    throw internal_error("region: nonempty omega with empty carrier");
  }
  return reg;
}

namespace {

// Shrinks L while omega_L stays the singleton {q}.
std::vector<int> minimize_singleton(const TwoParamFamily& f, std::vector<int> L,
                                    const ParamPoint& q) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < L.size(); ++i) {
      std::vector<int> cand;
      for (size_t j = 0; j < L.size(); ++j)
        if (j != i) cand.push_back(L[j]);
      if ((int)cand.size() - rank(f.A.select_rows(cand)) != 2) continue;
      CarrierResult cr = carrier_line(f, cand);
      if (!std::holds_alternative<ParamPoint>(cr.carrier)) continue;
      if (!(std::get<ParamPoint>(cr.carrier) == q)) continue;
      if (!f.in_omega(cand, q)) continue;
      L = std::move(cand);
      changed = true;
      break;
    }
  }
  return L;
}

}  // namespace

PointClass classify_point(const TwoParamFamily& f, const ParamPoint& q) {
  PointClass pc;
  if (f.polytope_at(q).empty()) {
    pc.kind = PointClassKind::Outside;
    return pc;
  }
  std::vector<int> through;  // circuits whose carrier line passes through q
  for (size_t ci = 0; ci < f.circs.size(); ++ci) {
    const Relation& r = f.circ_rel[ci];
    ParamLine l = r.line();
    if (l.proper() ? l.contains(q) : l.c.is_zero()) through.push_back((int)ci);
  }
  std::vector<int> marked;
  for (int ci : through)
    if (f.in_omega(f.circs[ci], q)) marked.push_back(ci);

  // singleton candidates from transversal pairs of lines through q
  std::vector<std::vector<int>> cands;
  for (size_t i = 0; i < through.size(); ++i)
    for (size_t j = i + 1; j < through.size(); ++j) {
      const Relation& r1 = f.circ_rel[through[i]];
      const Relation& r2 = f.circ_rel[through[j]];
      if (!r1.line().proper() || !r2.line().proper()) continue;
      Rat det = r1.sum_c * r2.sum_bpp - r2.sum_c * r1.sum_bpp;
      if (det.is_zero()) continue;  // parallel or identical lines
      std::vector<int> L;
      std::set_union(f.circs[through[i]].begin(), f.circs[through[i]].end(),
                     f.circs[through[j]].begin(), f.circs[through[j]].end(),
                     std::back_inserter(L));
      if (!f.in_omega(L, q)) continue;
      L = minimize_singleton(f, std::move(L), q);
      if (std::find(cands.begin(), cands.end(), L) == cands.end()) cands.push_back(std::move(L));
    }
  if (!cands.empty()) {
    std::sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    pc.kind = PointClassKind::U0;
    pc.minimal = cands[0];
    return pc;
  }
  if (marked.empty()) {
    pc.kind = PointClassKind::U2;
    return pc;
  }
  bool same_line = true;
  for (size_t i = 1; i < marked.size(); ++i) {
    const Relation& r0 = f.circ_rel[marked[0]];
    const Relation& ri = f.circ_rel[marked[i]];
    Rat det = r0.sum_c * ri.sum_bpp - ri.sum_c * r0.sum_bpp;
    if (!det.is_zero()) same_line = false;
  }
  if (same_line) {
    pc.kind = PointClassKind::U1;
    std::vector<std::vector<int>> ms;
    for (int ci : marked) ms.push_back(f.circs[ci]);
    std::sort(ms.begin(), ms.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    pc.minimal = ms[0];
    return pc;
  }
  pc.kind = PointClassKind::U0prime;
  return pc;
}

Rat safe_step(const TwoParamFamily& f, const ParamPoint& q, const RatVec& w) {
  Rat best(1);
  for (const auto& rel : f.circ_rel) {
    ParamLine l = rel.line();
    if (!l.proper()) continue;
    Rat val = l.a * q.eps + l.b * q.delta + l.c;
    if (val.is_zero()) continue;  // passes through q
    Rat dv = l.a * w[1] + l.b * w[0];
    if (dv.is_zero()) continue;
    Rat t = -val / dv;
    if (t.sign() > 0 && t < best) best = t;
  }
  return best / Rat(2);
}

namespace {

std::string ids_of(const TwoParamFamily& f, const std::vector<int>& rows) {
  std::string s = "{";
  for (size_t i = 0; i < rows.size(); ++i)
    s += (i ? "," : "") + std::to_string(f.emb.rows[rows[i]].id);
  return s + "}";
}

}  // namespace

GenericityReport check_genericity(const TwoParamFamily& f) {
  GenericityReport rep;
  auto fail = [&](std::string msg) {
    rep.pass = false;
    rep.violations.push_back(std::move(msg));
  };

  // The parameter plane itself must be a plane: B'-B not a multiple of C.
  {
    RatMatrix m = RatMatrix::from_rows({f.Bpp, f.C});
    if (rank(m) < 2)
      fail("B'-B is colinear with the anticanonical column (degenerate parameter plane)");
  }

  int nc = (int)f.circs.size();
  std::vector<bool> nonempty(nc);
  for (int i = 0; i < nc; ++i) nonempty[i] = f.omega_nonempty(f.circs[i]);

  // (i) dimension bounds for circuits (codim 1)
  for (int i = 0; i < nc; ++i) {
    const Relation& r = f.circ_rel[i];
    if (r.degenerate_line() && r.sum_b.is_zero() && nonempty[i])
      fail("circuit " + ids_of(f, f.circs[i]) + " has a full-plane carrier with nonempty omega");
  }

  // (ii) collinear distinct segments
  for (int i = 0; i < nc; ++i)
    for (int j = i + 1; j < nc; ++j) {
      if (!nonempty[i] || !nonempty[j]) continue;
      const Relation &ri = f.circ_rel[i], &rj = f.circ_rel[j];
      if (!ri.line().proper() || !rj.line().proper()) continue;
      bool same = (ri.sum_c * rj.sum_bpp - rj.sum_c * ri.sum_bpp).is_zero() &&
                  (ri.sum_c * rj.sum_b - rj.sum_c * ri.sum_b).is_zero() &&
                  (ri.sum_bpp * rj.sum_b - rj.sum_bpp * ri.sum_b).is_zero();
      if (same)
        fail("circuits " + ids_of(f, f.circs[i]) + " and " + ids_of(f, f.circs[j]) +
             " span the same carrier line with nonempty omegas");
    }

  // (i) codim >= 2 unions: dimension bounds / emptiness
  struct PtCand {
    ParamPoint q;
    std::vector<int> L;
  };
  std::vector<PtCand> points;
  for (int i = 0; i < nc; ++i)
    for (int j = i + 1; j < nc; ++j) {
      std::vector<int> L;
      std::set_union(f.circs[i].begin(), f.circs[i].end(), f.circs[j].begin(), f.circs[j].end(),
                     std::back_inserter(L));
      int codim = (int)L.size() - rank(f.A.select_rows(L));
      if (codim < 2) continue;
      CarrierResult cr = carrier_line(f, L);
      if (codim >= 3) {
        if (f.omega_nonempty(L))
          fail("union " + ids_of(f, L) + " has codimension >= 3 with nonempty omega");
        continue;
      }
      if (std::holds_alternative<CarrierEmpty>(cr.carrier)) continue;
      if (!std::holds_alternative<ParamPoint>(cr.carrier)) {
        if (f.omega_nonempty(L))
          fail("union " + ids_of(f, L) + " has a degenerate (non-point) carrier with nonempty omega");
        continue;
      }
      ParamPoint q = std::get<ParamPoint>(cr.carrier);
      if (f.in_omega(L, q)) points.push_back({q, minimize_singleton(f, L, q)});
    }

  // (iii) coincident minimal points
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j) {
      if (!(points[i].q == points[j].q) || points[i].L == points[j].L) continue;
      const auto &L1 = points[i].L, &L2 = points[j].L;
      std::vector<int> inter;
      std::set_intersection(L1.begin(), L1.end(), L2.begin(), L2.end(), std::back_inserter(inter));
      bool forced = false;
      if ((int)inter.size() - rank(f.A.select_rows(inter)) == 2) {
        CarrierResult cr = carrier_line(f, inter);
        forced = std::holds_alternative<ParamPoint>(cr.carrier) &&
                 std::get<ParamPoint>(cr.carrier) == points[i].q && f.in_omega(inter, points[i].q);
      }
      if (!forced)
        fail("distinct minimal singletons " + ids_of(f, L1) + " and " + ids_of(f, L2) +
             " coincide at the same point");
    }

  // (iv) point-on-segment incidences
  for (const auto& pt : points)
    for (int i = 0; i < nc; ++i) {
      if (!nonempty[i]) continue;
      const Relation& r = f.circ_rel[i];
      if (!r.line().proper() || !r.line().contains(pt.q)) continue;
      if (!std::includes(pt.L.begin(), pt.L.end(), f.circs[i].begin(), f.circs[i].end()))
        fail("segment circuit " + ids_of(f, f.circs[i]) + " passes through the singleton of " +
             ids_of(f, pt.L) + " without being contained in it");
    }

  // (v) three concurrent lines
  for (int i = 0; i < nc; ++i)
    for (int j = i + 1; j < nc; ++j)
      for (int k = j + 1; k < nc; ++k) {
        if (!nonempty[i] || !nonempty[j] || !nonempty[k]) continue;
        const Relation &ri = f.circ_rel[i], &rj = f.circ_rel[j], &rk = f.circ_rel[k];
        if (!ri.line().proper() || !rj.line().proper() || !rk.line().proper()) continue;
        auto qij = intersect(ri.line(), rj.line());
        if (!qij || !rk.line().contains(*qij)) continue;
        std::vector<int> uij, uik, ujk, uall;
        std::set_union(f.circs[i].begin(), f.circs[i].end(), f.circs[j].begin(), f.circs[j].end(),
                       std::back_inserter(uij));
        std::set_union(f.circs[i].begin(), f.circs[i].end(), f.circs[k].begin(), f.circs[k].end(),
                       std::back_inserter(uik));
        std::set_union(f.circs[j].begin(), f.circs[j].end(), f.circs[k].begin(), f.circs[k].end(),
                       std::back_inserter(ujk));
        if (!(uij == uik && uik == ujk))
          fail("three carrier lines of " + ids_of(f, f.circs[i]) + ", " + ids_of(f, f.circs[j]) +
               ", " + ids_of(f, f.circs[k]) + " meet outside the allowed union pattern");
      }

  return rep;
}

Strip default_strip(const TwoParamFamily& f) {
  Rat lo(-1), hi(1);
  std::vector<ParamLine> lines;
  for (const auto& r : f.circ_rel)
    if (r.line().proper()) lines.push_back(r.line());
  auto consider = [&](const Rat& e) {
    if (e - Rat(1) > hi) hi = e + Rat(1);
    if (e + Rat(1) < lo) lo = e - Rat(1);
    if (e > hi) hi = e + Rat(1);
    if (e < lo) lo = e - Rat(1);
  };
  for (const auto& l : lines) {
    if (l.a.is_zero()) continue;
    for (int d : {0, 1}) consider(-(l.b * Rat(d) + l.c) / l.a);
  }
  for (size_t i = 0; i < lines.size(); ++i)
    for (size_t j = i + 1; j < lines.size(); ++j) {
      auto q = intersect(lines[i], lines[j]);
      if (q && q->delta >= Rat(0) && q->delta <= Rat(1)) consider(q->eps);
    }
  return Strip{Rat(0), Rat(1), lo, hi};
}

Rat polygon_area2(const Polygon& poly) {
  Rat s;
  int n = (int)poly.size();
  for (int i = 0; i < n; ++i) {
    const ParamPoint &p = poly[i], &q = poly[(i + 1) % n];
    s += p.delta * q.eps - q.delta * p.eps;
  }
  return s;
}

ParamPoint polygon_centroid(const Polygon& poly) {
  Rat d, e;
  for (const auto& p : poly) {
    d += p.delta;
    e += p.eps;
  }
  Rat inv = Rat(1) / Rat((long)poly.size());
  return {d * inv, e * inv};
}

Polygon clip_polygon(const Polygon& poly, const RatVec& normal, const Rat& rhs) {
  // keep side: normal . (delta, eps) >= rhs
  Polygon out;
  int n = (int)poly.size();
  for (int i = 0; i < n; ++i) {
    const ParamPoint &p = poly[i], &q = poly[(i + 1) % n];
    Rat vp = normal[0] * p.delta + normal[1] * p.eps - rhs;
    Rat vq = normal[0] * q.delta + normal[1] * q.eps - rhs;
    if (vp.sign() >= 0) out.push_back(p);
    if ((vp.sign() < 0 && vq.sign() > 0) || (vp.sign() > 0 && vq.sign() < 0)) {
      Rat t = vp / (vp - vq);
      out.push_back({p.delta + t * (q.delta - p.delta), p.eps + t * (q.eps - p.eps)});
    }
  }
  // drop consecutive duplicates
  Polygon ded;
  for (const auto& p : out)
    if (ded.empty() || !(ded.back() == p)) ded.push_back(p);
  if (ded.size() > 1 && ded.front() == ded.back()) ded.pop_back();
  return ded;
}

namespace {

struct LineInfo {
  ParamLine line;
  std::vector<int> circuit_ids;  // indices into f.circs, sorted by (size, lex)
};

Rat line_param(const ParamLine& l, const ParamPoint& q) {
  // monotone parameter along the line direction (a, -b)
  return l.a * q.delta - l.b * q.eps;
}

ParamPoint line_point(const ParamLine& l, const Rat& t) {
  // inverse of line_param on the line
  Rat nn = l.a * l.a + l.b * l.b;
  // base point: closest representation -(c)*... solve a*eps + b*delta + c = 0
  // with (delta, eps) = t*(a,-b)/nn + s*(b,a)??  Use direct formula:
  // point = t*(a,-b)/nn + p0 where p0 = (-c)*(b, a)/nn satisfies the line eq.
  Rat inv = Rat(1) / nn;
  ParamPoint p0{-l.c * l.b * inv, -l.c * l.a * inv};
  return {p0.delta + t * l.a * inv, p0.eps - t * l.b * inv};
}

}  // namespace

Decomposition decompose(const TwoParamFamily& f, const Strip& strip) {
  GenericityReport gr = check_genericity(f);
  if (!gr.pass) {
    std::string msg = "genericity failure:";
    for (const auto& v : gr.violations) msg += "\n  " + v;
    throw genericity_error(msg);
  }
  Decomposition dec;
  dec.strip = strip;

  // distinct proper carrier lines with their circuits
  std::vector<LineInfo> lines;
  for (size_t ci = 0; ci < f.circs.size(); ++ci) {
    const Relation& r = f.circ_rel[ci];
    if (!r.line().proper()) continue;
    bool found = false;
    for (auto& li : lines) {
      ParamLine l = r.line();
      bool same = (li.line.a * l.b - l.a * li.line.b).is_zero() &&
                  (li.line.a * l.c - l.a * li.line.c).is_zero() &&
                  (li.line.b * l.c - l.b * li.line.c).is_zero();
      if (same) {
        li.circuit_ids.push_back((int)ci);
        found = true;
        break;
      }
    }
    if (!found) lines.push_back({r.line(), {(int)ci}});
  }
  for (auto& li : lines)
    std::sort(li.circuit_ids.begin(), li.circuit_ids.end(), [&](int a, int b) {
      return f.circs[a].size() != f.circs[b].size() ? f.circs[a].size() < f.circs[b].size()
                                                    : f.circs[a] < f.circs[b];
    });

  // strip rectangle clipped by Omega_empty
  Polygon base = {{strip.dmin, strip.emin},
                  {strip.dmax, strip.emin},
                  {strip.dmax, strip.emax},
                  {strip.dmin, strip.emax}};
  Region omega0 = region(f, {});
  for (const auto& row : omega0.omega_big.rows) {
    if (row.op == RelOp::Eq) throw internal_error("decompose: Omega_empty is not 2-dimensional");
    base = clip_polygon(base, row.a, row.rhs);
    if (base.size() < 3) break;
  }
  std::vector<Polygon> polys;
  if (base.size() >= 3 && polygon_area2(base).sign() != 0) polys.push_back(base);

  for (const auto& li : lines) {
    std::vector<Polygon> next;
    for (const auto& poly : polys) {
      // line a*eps + b*delta + c = 0 -> normal over (delta, eps) is (b, a)
      RatVec nrm = {li.line.b, li.line.a};
      Polygon up = clip_polygon(poly, nrm, -li.line.c);
      RatVec nrm2 = {-li.line.b, -li.line.a};
      Polygon dn = clip_polygon(poly, nrm2, li.line.c);
      for (auto& pp : {up, dn})
        if (pp.size() >= 3 && polygon_area2(pp).sign() > 0) next.push_back(pp);
    }
    polys = std::move(next);
  }
  std::sort(polys.begin(), polys.end(), [](const Polygon& a, const Polygon& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const ParamPoint& p, const ParamPoint& q) { return p < q; });
  });

  // union-find over polygons; merge across line portions that are not walls
  std::vector<int> parent(polys.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = (int)i;
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };

  for (const auto& li : lines) {
    // boundary segments of each polygon on this line, as parameter intervals
    struct Seg {
      Rat lo, hi;
      int poly;
      int side;  // sign of line eval at centroid
    };
    std::vector<Seg> segs;
    std::vector<Rat> cuts;
    for (size_t pi = 0; pi < polys.size(); ++pi) {
      const Polygon& poly = polys[pi];
      int n = (int)poly.size();
      for (int i = 0; i < n; ++i) {
        const ParamPoint &pp = poly[i], &qq = poly[(i + 1) % n];
        if (!li.line.contains(pp) || !li.line.contains(qq)) continue;
        Rat t1 = line_param(li.line, pp), t2 = line_param(li.line, qq);
        if (t1 == t2) continue;
        if (t1 > t2) std::swap(t1, t2);
        ParamPoint c = polygon_centroid(poly);
        int side = (li.line.a * c.eps + li.line.b * c.delta + li.line.c).sign();
        segs.push_back({t1, t2, (int)pi, side});
        cuts.push_back(t1);
        cuts.push_back(t2);
      }
    }
    if (segs.empty()) continue;
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
      Rat mid = (cuts[i] + cuts[i + 1]) / Rat(2);
      ParamPoint q = line_point(li.line, mid);
      // which polygons border this elementary piece?
      int up = -1, dn = -1;
      for (const auto& s : segs) {
        if (s.lo <= cuts[i] && cuts[i + 1] <= s.hi) {
          if (s.side > 0) up = s.poly;
          if (s.side < 0) dn = s.poly;
        }
      }
      if (up < 0 && dn < 0) continue;
      // wall piece iff some circuit of this line has q in omega
      int wall_circ = -1;
      for (int ci : li.circuit_ids)
        if (f.in_omega(f.circs[ci], q)) { wall_circ = ci; break; }
      if (wall_circ >= 0) {
        WallPiece w;
        w.from = line_point(li.line, cuts[i]);
        w.to = line_point(li.line, cuts[i + 1]);
        w.min_circuit = f.circs[wall_circ];
        w.rel = f.circ_rel[wall_circ];
        w.on_boundary = !f.in_omega({}, q);
        dec.walls.push_back(std::move(w));
      } else if (up >= 0 && dn >= 0 && classify_point(f, q).kind == PointClassKind::U2) {
        parent[find(up)] = find(dn);
      }
    }
  }

  // cells from union-find groups
  std::map<int, Cell> groups;
  for (size_t pi = 0; pi < polys.size(); ++pi) groups[find((int)pi)].parts.push_back(polys[pi]);
  for (auto& [root, cell] : groups) {
    cell.sample = polygon_centroid(cell.parts[0]);
    PointClass pc = classify_point(f, cell.sample);
    if (pc.kind != PointClassKind::U2)
      throw internal_error("decompose: cell sample point is not in U2");
    cell.label = f.variety_at(cell.sample);
    dec.cells.push_back(std::move(cell));
  }

  // 0-dimensional strata: pairwise intersections of carrier lines
  std::vector<ParamPoint> seen;
  for (size_t i = 0; i < lines.size(); ++i)
    for (size_t j = i + 1; j < lines.size(); ++j) {
      auto q = intersect(lines[i].line, lines[j].line);
      if (!q) continue;
      if (q->delta < strip.dmin || q->delta > strip.dmax || q->eps < strip.emin ||
          q->eps > strip.emax)
        continue;
      if (std::find(seen.begin(), seen.end(), *q) != seen.end()) continue;
      seen.push_back(*q);
      PointClass pc = classify_point(f, *q);
      if (pc.kind == PointClassKind::U0 || pc.kind == PointClassKind::U0prime)
        dec.points.push_back({*q, pc});
    }
  std::sort(dec.points.begin(), dec.points.end(),
            [](const DecompPoint& a, const DecompPoint& b) { return a.q < b.q; });

  // Merge contiguous wall pieces of the same circuit across arrangement
  // vertices that are not 0-dimensional strata.
  auto special = [&](const ParamPoint& q) {
    for (const auto& p : dec.points)
      if (p.q == q) return true;
    return false;
  };
  std::vector<WallPiece> merged;
  for (auto& w : dec.walls) {
    if (!merged.empty()) {
      WallPiece& prev = merged.back();
      if (prev.min_circuit == w.min_circuit && prev.on_boundary == w.on_boundary &&
          prev.to == w.from && !special(w.from)) {
        prev.to = w.to;
        continue;
      }
    }
    merged.push_back(w);
  }
  dec.walls = std::move(merged);
  return dec;
}

}  // namespace horosark
