#include "horosark/sarkisov.hpp"

#include <algorithm>
#include <set>

namespace horosark {

namespace {

// exists eps < 0 with (delta0, eps) in omega_I
bool omega_reaches_negative_eps(const TwoParamFamily& f, const std::vector<int>& I, int delta0) {
  std::vector<bool> in_i(f.p(), false);
  for (int i : I) in_i[i] = true;
  int nv = f.n() + 2;  // x, eps, t
  LinearProgram lp;
  lp.nvars = nv;
  lp.c.assign(nv, Rat());
  lp.c[nv - 1] = Rat(1);
  for (int r = 0; r < f.p(); ++r) {
    RatVec a = f.A.row(r);
    a.resize(nv);
    a[f.n()] = -f.C[r];
    Rat rhs = f.B[r] + Rat(delta0) * f.Bpp[r];
    if (in_i[r]) {
      lp.add_eq(a, rhs);
    } else {
      a[nv - 1] = Rat(-1);
      lp.add_ge(a, rhs);
    }
  }
  RatVec neg(nv);
  neg[f.n()] = Rat(-1);
  neg[nv - 1] = Rat(-1);
  lp.add_ge(neg, Rat());  // -eps - t >= 0, i.e. eps <= -t
  RatVec cap(nv);
  cap[nv - 1] = Rat(-1);
  lp.add_ge(cap, Rat(-1));
  LpResult res = solve_lp(lp);
  return res.status == LpStatus::Optimal && res.value.sign() > 0;
}

ParamLine line_through(const ParamPoint& p, const ParamPoint& q) {
  Rat a = q.delta - p.delta, b = -(q.eps - p.eps);
  return {a, b, -(a * p.eps + b * p.delta)};
}

bool same_line(const ParamLine& l1, const ParamLine& l2) {
  return (l1.a * l2.b - l2.a * l1.b).is_zero() && (l1.a * l2.c - l2.a * l1.c).is_zero() &&
         (l1.b * l2.c - l2.b * l1.c).is_zero();
}

RatVec norm_l1(const RatVec& v) {
  Rat s;
  for (const auto& x : v) s += x.abs();
  if (s.is_zero()) throw internal_error("norm_l1: zero direction");
  RatVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] / s;
  return out;
}

}  // namespace

MoriChain mori_chain(const TwoParamFamily& f) {
  GenericityReport gr = check_genericity(f);
  if (!gr.pass) {
    std::string msg = "mori_chain: genericity failure:";
    for (const auto& v : gr.violations) msg += "\n  " + v;
    throw genericity_error(msg);
  }
  for (int d : {0, 1})
    if (!f.in_omega({}, ParamPoint{Rat(d), Rat(0)}))
      throw validation_error("mori_chain: (" + std::to_string(d) + ",0) is not in omega_empty");
  for (int r : f.emb.ray_rows())
    for (int d : {0, 1})
      if (!omega_reaches_negative_eps(f, {r}, d))
        throw validation_error("mori_chain: ray row " + std::to_string(f.emb.rows[r].id) +
                               " has no facet at negative eps over delta = " + std::to_string(d));

  // Clip the strip rectangle by Omega_empty; boundary edges off the box are
  // the Mori polygonal chain.
  Strip strip = default_strip(f);
  Polygon base = {{strip.dmin, strip.emin},
                  {strip.dmax, strip.emin},
                  {strip.dmax, strip.emax},
                  {strip.dmin, strip.emax}};
  Region omega0 = region(f, {});
  for (const auto& row : omega0.omega_big.rows) {
    if (row.op == RelOp::Eq) throw internal_error("mori_chain: Omega_empty not 2-dimensional");
    base = clip_polygon(base, row.a, row.rhs);
  }
  if (base.size() < 3) throw internal_error("mori_chain: empty Omega_empty in the strip");
  if (polygon_area2(base).sign() < 0) std::reverse(base.begin(), base.end());

  struct Edge {
    ParamPoint from, to;
  };
  std::vector<Edge> edges;
  int nb = (int)base.size();
  for (int i = 0; i < nb; ++i) {
    ParamPoint p = base[i], q = base[(i + 1) % nb];
    if (p == q) continue;
    bool on_box = (p.delta == strip.dmin && q.delta == strip.dmin) ||
                  (p.delta == strip.dmax && q.delta == strip.dmax) ||
                  (p.eps == strip.emin && q.eps == strip.emin) ||
                  (p.eps == strip.emax && q.eps == strip.emax);
    if (on_box) continue;
    if (p.delta > q.delta) std::swap(p, q);
    if (p.delta == q.delta) throw internal_error("mori_chain: vertical MPC edge");
    edges.push_back({p, q});
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.from < b.from; });
  for (size_t i = 0; i + 1 < edges.size(); ++i)
    if (!(edges[i].to == edges[i + 1].from))
      throw internal_error("mori_chain: boundary edges do not chain");
  // merge collinear neighbours (clipping may leave subdivision vertices)
  {
    std::vector<Edge> merged;
    for (const Edge& e : edges) {
      if (!merged.empty() &&
          same_line(line_through(merged.back().from, merged.back().to), line_through(e.from, e.to)))
        merged.back().to = e.to;
      else
        merged.push_back(e);
    }
    edges = std::move(merged);
  }

  MoriChain chain;
  auto classify_anchor = [&](const ParamPoint& q, bool vertex) {
    PointClass pc = classify_point(f, q);
    if (pc.kind != PointClassKind::U0)
      throw internal_error("mori_chain: chain breakpoint is not a U0 point");
    chain.anchors.push_back({q, pc.minimal, vertex});
  };

  for (size_t ei = 0; ei < edges.size(); ++ei) {
    const Edge& e = edges[ei];
    ParamLine l = line_through(e.from, e.to);
    // minimal circuit of this edge
    auto pick_circuit = [&](const ParamPoint& mid) -> int {
      int best = -1;
      for (size_t ci = 0; ci < f.circs.size(); ++ci) {
        if (!f.circ_rel[ci].line().proper() || !same_line(f.circ_rel[ci].line(), l)) continue;
        if (!f.in_omega(f.circs[ci], mid)) continue;
        if (best < 0 || f.circs[ci].size() < f.circs[best].size() ||
            (f.circs[ci].size() == f.circs[best].size() && f.circs[ci] < f.circs[best]))
          best = (int)ci;
      }
      return best;
    };
    // interior anchors: other carrier lines crossing the open edge
    std::vector<ParamPoint> cuts;
    for (size_t ci = 0; ci < f.circs.size(); ++ci) {
      const Relation& r = f.circ_rel[ci];
      if (!r.line().proper() || same_line(r.line(), l)) continue;
      auto q = intersect(r.line(), l);
      if (!q) continue;
      if (!(e.from.delta < q->delta && q->delta < e.to.delta)) continue;
      if (std::find(cuts.begin(), cuts.end(), *q) != cuts.end()) continue;
      if (classify_point(f, *q).kind == PointClassKind::U0) cuts.push_back(*q);
    }
    std::sort(cuts.begin(), cuts.end());
    ParamPoint cur = e.from;
    for (size_t k = 0; k <= cuts.size(); ++k) {
      ParamPoint nxt = (k < cuts.size()) ? cuts[k] : e.to;
      ParamPoint mid{(cur.delta + nxt.delta) / Rat(2), (cur.eps + nxt.eps) / Rat(2)};
      int ci = pick_circuit(mid);
      if (ci < 0) throw internal_error("mori_chain: no circuit carries a chain piece");
      ChainPiece piece;
      piece.from = cur;
      piece.to = nxt;
      piece.I = f.circs[ci];
      piece.rel = f.circ_rel[ci];
      if (classify_point(f, mid).kind != PointClassKind::U1)
        throw internal_error("mori_chain: piece midpoint is not in U1");
      piece.target = f.variety_at(mid);
      chain.pieces.push_back(std::move(piece));
      if (k < cuts.size()) classify_anchor(cuts[k], /*vertex=*/false);
      cur = nxt;
    }
    if (ei + 1 < edges.size()) classify_anchor(e.to, /*vertex=*/true);
  }
  return chain;
}

RayPartition ray_partition(const TwoParamFamily& f, const MoriChain& chain, int anchor_index) {
  if (anchor_index < 0 || anchor_index >= (int)chain.anchors.size())
    throw validation_error("ray_partition: anchor index out of range");
  const ChainAnchor& anc = chain.anchors[anchor_index];
  const ChainPiece& left = chain.pieces[anchor_index];
  const ChainPiece& right = chain.pieces[anchor_index + 1];

  RayPartition rp;
  rp.anchor = anc.q;
  rp.L = anc.L;
  rp.vertex = anc.vertex;
  int nl = (int)rp.L.size();
  auto posL = [&](int row) {
    auto it = std::find(rp.L.begin(), rp.L.end(), row);
    if (it == rp.L.end()) throw internal_error("ray_partition: relation support escapes L");
    return (int)(it - rp.L.begin());
  };
  auto expand = [&](const Relation& r) {
    RatVec v(nl);
    for (size_t i = 0; i < r.support.size(); ++i) v[posL(r.support[i])] = r.lambda[i];
    return v;
  };

  rp.I = left.I;
  rp.lamI = expand(left.rel);
  if (!left.rel.one_sided() || left.rel.sum_c != Rat(1))
    throw internal_error("ray_partition: left segment relation is not one-sided normalized");

  if (anc.vertex) {
    if (!right.rel.one_sided() || right.rel.sum_c != Rat(1))
      throw internal_error("ray_partition: right segment relation is not one-sided normalized");
    rp.lamJ = expand(right.rel);
    rp.d = Rat(1);
  } else {
    if (left.I != right.I)
      throw internal_error("ray_partition: non-vertex anchor with distinct side circuits");
    // second relation: >= 0 on I with some zero entry, mixed signs on L \ I,
    // normalized, and oriented so that a*d - b < 0 when that pins the sign.
    auto ker = kernel_basis(f.A.select_rows(rp.L).transpose());
    if (ker.size() != 2) throw internal_error("ray_partition: L does not have codimension 2");
    RatVec mu0;
    {
      // a kernel vector independent from lamI
      const RatVec& k0 = ker[0];
      const RatVec& k1 = ker[1];
      RatMatrix m = RatMatrix::from_rows({rp.lamI, k0});
      mu0 = (rank(m) == 2) ? k0 : k1;
    }
    std::vector<int> iposs;  // positions of I inside L
    for (int row : rp.I) iposs.push_back(posL(row));
    Rat aI;  // sl_I numerator
    for (int i = 0; i < nl; ++i) aI += rp.lamI[i] * f.Bpp[rp.L[i]];

    std::vector<RatVec> valid;
    for (int sg : {1, -1}) {
      RatVec cand(nl);
      for (int i = 0; i < nl; ++i) cand[i] = Rat(sg) * mu0[i];
      // shift by lamI so that the I-part is >= 0 with some zero
      bool first = true;
      Rat t;
      for (int ip : iposs) {
        Rat need = -cand[ip] / rp.lamI[ip];
        if (first || need > t) {
          t = need;
          first = false;
        }
      }
      for (int i = 0; i < nl; ++i) cand[i] += t * rp.lamI[i];
      Rat sc, sb;
      for (int i = 0; i < nl; ++i) {
        sc += cand[i] * f.C[rp.L[i]];
        sb += cand[i] * f.Bpp[rp.L[i]];
      }
      if (sc.sign() > 0) {
        Rat inv = Rat(1) / sc;
        for (auto& x : cand) x *= inv;
        sb *= inv;
        sc = Rat(1);
      } else if (sc.is_zero() && sb.sign() > 0) {
        Rat inv = Rat(1) / sb;
        for (auto& x : cand) x *= inv;
        sb = Rat(1);
      } else {
        continue;
      }
      bool has_pos = false, has_neg = false, nonzero_off = true;
      for (int i = 0; i < nl; ++i) {
        if (std::find(iposs.begin(), iposs.end(), i) != iposs.end()) continue;
        if (cand[i].is_zero()) nonzero_off = false;
        if (cand[i].sign() > 0) has_pos = true;
        if (cand[i].sign() < 0) has_neg = true;
      }
      if (!nonzero_off || !has_pos || !has_neg) continue;
      valid.push_back(std::move(cand));
    }
    if (valid.size() == 2) {
      // disambiguate by the rotation orientation (decreasing relative slopes)
      std::vector<RatVec> oriented;
      for (auto& cand : valid) {
        Rat sc, sb;
        for (int i = 0; i < nl; ++i) {
          sc += cand[i] * f.C[rp.L[i]];
          sb += cand[i] * f.Bpp[rp.L[i]];
        }
        if (aI * sc - sb < Rat(0)) oriented.push_back(std::move(cand));
      }
      valid = std::move(oriented);
    }
    if (valid.size() != 1)
      throw internal_error("ray_partition: second relation is not uniquely determined");
    rp.lamJ = valid[0];
    rp.d = Rat();
    for (int i = 0; i < nl; ++i) rp.d += rp.lamJ[i] * f.C[rp.L[i]];
  }

  for (int i = 0; i < nl; ++i) {
    rp.a += rp.lamI[i] * f.Bpp[rp.L[i]];
    rp.b += rp.lamJ[i] * f.Bpp[rp.L[i]];
  }

  // nu classes: nu_k = -lamI_k / lamJ_k in [-infinity, 0]
  struct Nu {
    bool inf;
    Rat val;
  };
  auto nu_of = [&](int i) -> Nu {
    if (rp.lamJ[i].is_zero()) {
      if (rp.lamI[i].is_zero())
        throw internal_error("ray_partition: both relations vanish on a row of L");
      return {true, Rat()};
    }
    return {false, -rp.lamI[i] / rp.lamJ[i]};
  };
  std::vector<int> order(nl);
  for (int i = 0; i < nl; ++i) order[i] = i;
  auto nu_less = [&](const Nu& x, const Nu& y) {  // x < y
    if (x.inf) return !y.inf;
    if (y.inf) return false;
    return x.val < y.val;
  };
  auto nu_eq = [&](const Nu& x, const Nu& y) {
    if (x.inf || y.inf) return x.inf == y.inf;
    return x.val == y.val;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return nu_less(nu_of(j), nu_of(i)); });  // descending
  for (int idx = 0; idx < nl;) {
    Nu nu = nu_of(order[idx]);
    NuClass cls;
    cls.nu_neg_inf = nu.inf;
    cls.nu = nu.val;
    while (idx < nl && nu_eq(nu_of(order[idx]), nu)) cls.members.push_back(rp.L[order[idx++]]);
    std::sort(cls.members.begin(), cls.members.end());
    for (int row : rp.L)
      if (std::find(cls.members.begin(), cls.members.end(), row) == cls.members.end())
        cls.complement.push_back(row);
    // slope by the closed formula
    if (cls.nu_neg_inf) {
      if (rp.d.is_zero()) {
        cls.slope_inf = true;
      } else {
        cls.slope = rp.b / rp.d;
      }
    } else {
      Rat den = Rat(1) + rp.d * cls.nu;
      if (den.is_zero()) {
        cls.slope_inf = true;
      } else {
        cls.slope = (rp.a + cls.nu * rp.b) / den;
      }
    }
    rp.classes.push_back(std::move(cls));
  }
  if (!rp.classes.front().nu_neg_inf && !rp.classes.front().nu.is_zero())
    throw internal_error("ray_partition: first class does not have nu = 0");
  // each complement has a codimension-1 image with all deletions surjective
  for (const auto& cls : rp.classes) {
    const auto& ks = cls.complement;
    if ((int)ks.size() - rank(f.A.select_rows(ks)) != 1)
      throw internal_error("ray_partition: complement image does not have codimension 1");
  }
  return rp;
}

namespace {

struct Ray {
  RatVec dir;  // (delta, eps), unnormalized
  std::vector<int> wall;  // complement set K_s (0-based) or empty for MPC rays
  bool mpc = false;
  int sindex = -1;
};

// direction of omega_K emanating from q
RatVec omega_direction(const TwoParamFamily& f, const std::vector<int>& K, const ParamPoint& q) {
  Relation r = f.relation_for(K);
  ParamLine l = r.line();
  RatVec d0 = {l.a, -l.b};
  RatVec d1 = {-l.a, l.b};
  Rat h0 = safe_step(f, q, d0), h1 = safe_step(f, q, d1);
  bool ip = f.in_omega(K, {q.delta + h0 * d0[0], q.eps + h0 * d0[1]});
  bool im = f.in_omega(K, {q.delta + h1 * d1[0], q.eps + h1 * d1[1]});
  if (ip == im) throw internal_error("omega_direction: wall does not emanate from the anchor");
  return ip ? d0 : d1;
}

ParamPoint sample_in_sector(const TwoParamFamily& f, const ParamPoint& q, const RatVec& u,
                            const RatVec& v) {
  RatVec w = norm_l1(u) + norm_l1(v);
  Rat h = safe_step(f, q, w);
  ParamPoint s{q.delta + h * w[0], q.eps + h * w[1]};
  if (classify_point(f, s).kind != PointClassKind::U2)
    throw internal_error("sample_in_sector: sample is not in U2");
  return s;
}

ParamPoint point_on_ray(const TwoParamFamily& f, const std::vector<int>& wall,
                        const ParamPoint& q, const RatVec& dir) {
  Rat h = safe_step(f, q, dir);
  ParamPoint s{q.delta + h * dir[0], q.eps + h * dir[1]};
  if (!f.in_omega(wall, s) || classify_point(f, s).kind != PointClassKind::U1)
    throw internal_error("point_on_ray: sample is not in U1 on the wall");
  return s;
}

Rat cross2(const RatVec& u, const RatVec& v) { return u[0] * v[1] - u[1] * v[0]; }

bool drops(const VarietyDescriptor& from, const VarietyDescriptor& to) {
  if (to.dim < from.dim) return true;
  return to.colors != from.colors &&
         std::includes(from.colors.begin(), from.colors.end(), to.colors.begin(),
                       to.colors.end());
}

}  // namespace

SarkisovLink classify_link(const TwoParamFamily& f, const MoriChain& chain, int anchor_index) {
  SarkisovLink link;
  link.anchor = chain.anchors[anchor_index];
  link.partition = ray_partition(f, chain, anchor_index);
  const RayPartition& rp = link.partition;
  const ChainPiece& left = chain.pieces[anchor_index];
  const ChainPiece& right = chain.pieces[anchor_index + 1];
  const ParamPoint& q = rp.anchor;

  link.R = f.variety_at(q);
  link.T0 = left.target;
  link.T1 = right.target;

  // Rays around the anchor: the two chain directions plus the interior
  // complements K_s, angularly ordered into the Omega side.
  std::vector<Ray> rays;
  Ray r0;
  r0.dir = {left.from.delta - q.delta, left.from.eps - q.eps};
  r0.mpc = true;
  rays.push_back(r0);
  int nclasses = (int)rp.classes.size();
  int s_begin = 1;
  int s_end = rp.vertex ? nclasses - 1 : nclasses;  // interior classes
  for (int s = s_begin; s < s_end; ++s) {
    Ray r;
    r.wall = rp.classes[s].complement;
    r.sindex = s;
    r.dir = omega_direction(f, r.wall, q);
    rays.push_back(std::move(r));
  }
  Ray rlast;
  rlast.dir = {right.to.delta - q.delta, right.to.eps - q.eps};
  rlast.mpc = true;
  rays.push_back(rlast);

  // angular order from rays.front() sweeping through the interior of Omega
  RatVec w = {Rat(0), Rat(-1)};  // below the chain is inside Omega
  int sigma = cross2(rays.front().dir, w).sign();
  if (sigma == 0) throw internal_error("classify_link: degenerate interior direction");
  auto angle_class = [&](const Ray& r) {
    // 0: along v0; 1: strictly inside the sweep; 2: opposite to v0
    Rat cr = cross2(rays.front().dir, r.dir);
    if (cr.is_zero()) {
      Rat dp = rays.front().dir[0] * r.dir[0] + rays.front().dir[1] * r.dir[1];
      return dp.sign() > 0 ? 0 : 2;
    }
    return 1;
  };
  std::sort(rays.begin() + 1, rays.end(), [&](const Ray& x, const Ray& y) {
    int cx = angle_class(x), cy = angle_class(y);
    if (cx != cy) return cx < cy;
    if (cx != 1) return false;
    return (Rat(sigma) * cross2(x.dir, y.dir)).sign() > 0;
  });

  // sectors between consecutive rays
  for (size_t i = 0; i + 1 < rays.size(); ++i) {
    ParamPoint s = sample_in_sector(f, q, rays[i].dir, rays[i + 1].dir);
    link.sectors.push_back(f.variety_at(s));
  }
  // arrows across the interior rays
  for (size_t i = 1; i + 1 < rays.size(); ++i) {
    ParamPoint wq = point_on_ray(f, rays[i].wall, q, rays[i].dir);
    PointClass pc = classify_point(f, wq);
    if (pc.kind != PointClassKind::U1)
      throw internal_error("classify_link: ray sample is not in U1");
    WallClassification wc =
        classify_wall(f, wq, pc.minimal, &link.sectors[i - 1], &link.sectors[i]);
    LinkArrow arrow;
    arrow.kind = wc.kind;
    arrow.contracted_row = wc.contracted_row;
    arrow.wall_I = wc.min_I;
    link.arrows.push_back(std::move(arrow));
  }

  bool eq0 = link.R == link.T0, eq1 = link.R == link.T1;
  if (eq0 && eq1) {
    link.type = LinkType::II;
  } else if (eq0) {
    link.type = LinkType::I;
  } else if (eq1) {
    link.type = LinkType::III;
  } else {
    link.t0_drops = drops(link.T0, link.R);
    link.t1_drops = drops(link.T1, link.R);
    if (link.t0_drops != link.t1_drops)
      throw internal_error("classify_link: mixed fibration/small base maps in a type IV link");
    link.type = link.t0_drops ? LinkType::IVm : LinkType::IVs;
  }
  return link;
}

std::string to_string(LinkType t) {
  switch (t) {
    case LinkType::I: return "I";
    case LinkType::II: return "II";
    case LinkType::III: return "III";
    case LinkType::IVm: return "IV_m";
    case LinkType::IVs: return "IV_s";
  }
  return "?";
}

SarkisovProgram run_sarkisov(const TwoParamFamily& f, const VarietyDescriptor* expected_x,
                             const VarietyDescriptor* expected_s,
                             const VarietyDescriptor* expected_y,
                             const VarietyDescriptor* expected_t) {
  SarkisovProgram prog;
  prog.chain = mori_chain(f);
  HmmpRun run0 = run_hmmp(f, Rat(0));
  HmmpRun run1 = run_hmmp(f, Rat(1));
  prog.X = run0.events.back().source;
  prog.S = run0.terminal;
  prog.Y = run1.events.back().source;
  prog.T = run1.terminal;
  {
    ScalingCheck c = verify_scaling(f, expected_x ? *expected_x : prog.X,
                                    expected_s ? *expected_s : prog.S, Rat(0));
    if (!c.ok) throw validation_error("run_sarkisov: X/S endpoint check failed: " + c.diagnostic);
  }
  {
    ScalingCheck c = verify_scaling(f, expected_y ? *expected_y : prog.Y,
                                    expected_t ? *expected_t : prog.T, Rat(1));
    if (!c.ok) throw validation_error("run_sarkisov: Y/T endpoint check failed: " + c.diagnostic);
  }
  for (int i = 0; i < (int)prog.chain.anchors.size(); ++i)
    prog.links.push_back(classify_link(f, prog.chain, i));
  // consecutive links share their intermediate Mori fibre space
  for (size_t i = 0; i + 1 < prog.links.size(); ++i) {
    if (!(prog.links[i].sectors.back() == prog.links[i + 1].sectors.front()) ||
        !(prog.links[i].T1 == prog.links[i + 1].T0))
      throw internal_error("run_sarkisov: consecutive links do not share their MFS");
  }
  if (!prog.links.empty()) {
    if (!(prog.links.front().sectors.front() == prog.X) || !(prog.links.front().T0 == prog.S))
      throw internal_error("run_sarkisov: first link does not start at X/S");
    if (!(prog.links.back().sectors.back() == prog.Y) || !(prog.links.back().T1 == prog.T))
      throw internal_error("run_sarkisov: last link does not end at Y/T");
  }
  return prog;
}

}  // namespace horosark
