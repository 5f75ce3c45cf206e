#include "horosark/mmp.hpp"

#include <algorithm>
#include <set>

namespace horosark {

WallClassification classify_wall(const TwoParamFamily& f, const ParamPoint& q,
                                 const std::vector<int>& min_I,
                                 const VarietyDescriptor* side_before,
                                 const VarietyDescriptor* side_after) {
  if (!f.in_omega(min_I, q))
    throw validation_error("classify_wall: point is not on omega of the given set");
  WallClassification wc;
  wc.min_I = min_I;
  wc.rel = f.relation_for(min_I);
  wc.target = f.variety_at(q);

  const Relation& r = wc.rel;
  if (r.one_sided()) {
    wc.kind = WallKind::Fibration;
    return wc;
  }
  auto singleton_ray = [&](const std::vector<int>& side) -> int {
    if (side.size() != 1) return -1;
    return f.emb.rows[side[0]].kind == RowKind::Ray ? side[0] : -1;
  };
  int i = singleton_ray(r.pos);
  if (i < 0) i = singleton_ray(r.neg);
  if ((int)min_I.size() >= 2 && i >= 0) {
    // divisorial contraction or isomorphism; descriptors decide
    if (side_before && side_after && *side_before == *side_after) {
      wc.kind = WallKind::Isomorphism;
    } else {
      wc.kind = WallKind::Divisorial;
      wc.contracted_row = i;
    }
    return wc;
  }
  wc.kind = WallKind::Flip;
  return wc;
}

HmmpRun run_hmmp(const TwoParamFamily& f, const Rat& delta, const Rat& eps_start) {
  ParamPoint start{delta, eps_start};
  PointClass pc0 = classify_point(f, start);
  if (pc0.kind != PointClassKind::U2)
    throw validation_error("run_hmmp: the start point (" + delta.str() + "," + eps_start.str() +
                           ") is not in U2");
  // Heights where any carrier line crosses the vertical line; strata on the
  // sweep can only sit there.
  std::vector<Rat> heights;
  for (size_t ci = 0; ci < f.circs.size(); ++ci) {
    const Relation& r = f.circ_rel[ci];
    ParamLine l = r.line();
    if (!l.proper()) continue;
    if (l.a.is_zero()) {
      // vertical carrier line delta = -c/b
      if ((l.b * delta + l.c).is_zero() && f.omega_nonempty(f.circs[ci]))
        throw validation_error("run_hmmp: a one-dimensional omega lies on the sweep line delta = " +
                               delta.str() + "; perturb delta");
      continue;
    }
    Rat e = -(l.b * delta + l.c) / l.a;
    if (e > eps_start) heights.push_back(e);
  }
  std::sort(heights.begin(), heights.end());
  heights.erase(std::unique(heights.begin(), heights.end()), heights.end());

  HmmpRun run;
  run.delta = delta;
  Rat prev = eps_start;
  for (size_t h = 0; h < heights.size(); ++h) {
    Rat e = heights[h];
    ParamPoint q{delta, e};
    PointClass pc = classify_point(f, q);
    if (pc.kind == PointClassKind::U0 || pc.kind == PointClassKind::U0prime)
      throw validation_error("run_hmmp: the sweep line hits a 0-dimensional stratum at (" +
                             delta.str() + "," + e.str() + "); perturb delta");
    if (pc.kind == PointClassKind::U2) continue;  // inactive line crossing
    if (pc.kind == PointClassKind::Outside)
      throw internal_error("run_hmmp: sweep left the nonempty region without a fibration");
    // descriptors on both sides (the upper sample only until the next height)
    Rat next = (h + 1 < heights.size()) ? heights[h + 1] : e + Rat(1);
    VarietyDescriptor below = f.variety_at({delta, (prev + e) / Rat(2)});
    HmmpEvent ev;
    ev.eps = e;
    ev.source = below;
    WallClassification probe = classify_wall(f, q, pc.minimal);
    if (probe.kind == WallKind::Fibration) {
      ev.wall = probe;
      ev.after = probe.target;
      run.events.push_back(std::move(ev));
      run.eps_max = e;
      run.terminal = run.events.back().wall.target;
      return run;
    }
    VarietyDescriptor above = f.variety_at({delta, (e + next) / Rat(2)});
    ev.wall = classify_wall(f, q, pc.minimal, &below, &above);
    ev.after = above;
    run.events.push_back(std::move(ev));
    prev = e;
  }
  throw internal_error("run_hmmp: sweep ended without a fibration event");
}

ScalingCheck verify_scaling(const TwoParamFamily& f, const VarietyDescriptor& expected_x,
                            const VarietyDescriptor& expected_s, const Rat& delta,
                            const Rat& eps_start) {
  ScalingCheck out;
  // Every row that does not support a facet of the start polytope must be
  // strictly redundant there (coefficient strictly above the pullback value);
  // rows merely touching a face fail this.
  HPolytope p = f.polytope_at({delta, eps_start});
  if (p.empty()) {
    out.diagnostic = "empty polytope at the start point";
    return out;
  }
  std::set<int> facet_rows;
  for (const auto& cls : facet_row_classes(p))
    for (int r : cls) facet_rows.insert(r);
  for (int r = 0; r < f.p(); ++r) {
    if (facet_rows.count(r)) continue;
    auto mn = minimize(p, p.A().row(r));
    if (!mn) throw internal_error("verify_scaling: unbounded support function");
    if (!(*mn > p.b()[r])) {
      out.diagnostic = "row " + std::to_string(f.emb.rows[r].id) +
                       " is not strictly redundant at the start point";
      return out;
    }
  }
  if (!(variety_from_polytope(f.emb, p) == expected_x)) {
    out.diagnostic = "the start polytope does not define the expected variety";
    return out;
  }
  HmmpRun run = run_hmmp(f, delta, eps_start);
  const HmmpEvent& last = run.events.back();
  if (!(last.source == expected_x)) {
    out.diagnostic = "penultimate variety differs from the expected one";
    return out;
  }
  if (!(run.terminal == expected_s)) {
    out.diagnostic = "terminal fibration target differs from the expected one";
    return out;
  }
  out.ok = true;
  return out;
}

}  // namespace horosark
