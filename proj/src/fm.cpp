#include "horosark/fm.hpp"

#include <algorithm>
#include <map>

namespace horosark {

namespace {

bool constant_row_ok(const LinRow& r) {
  switch (r.op) {
    case RelOp::Eq: return r.rhs.is_zero();
    case RelOp::Ge: return r.rhs.sign() <= 0;
    case RelOp::Gt: return r.rhs.sign() < 0;
  }
  return false;
}

void scale_canonical(LinRow& r) {
  int lead = -1;
  for (size_t i = 0; i < r.a.size(); ++i)
    if (!r.a[i].is_zero()) { lead = (int)i; break; }
  if (lead < 0) return;
  Rat s = r.a[lead].abs();
  if (r.op == RelOp::Eq && r.a[lead].sign() < 0) {
    // sign-free: make leading coefficient +1
    s = -r.a[lead];
  }
  Rat inv = Rat(1) / s;
  for (auto& c : r.a) c *= inv;
  r.rhs *= inv;
}

}  // namespace

LinSystem normalize(LinSystem s) {
  LinSystem out;
  out.nvars = s.nvars;
  out.infeasible = s.infeasible;
  // key: coefficient vector; value per op kind
  std::map<std::vector<std::string>, std::map<int, Rat>> best;  // op -> max rhs
  std::vector<std::pair<std::vector<std::string>, LinRow>> order;
  for (auto& r : s.rows) {
    bool zero = std::all_of(r.a.begin(), r.a.end(), [](const Rat& c) { return c.is_zero(); });
    if (zero) {
      if (!constant_row_ok(r)) out.infeasible = true;
      continue;
    }
    scale_canonical(r);
    std::vector<std::string> key;
    key.reserve(r.a.size());
    for (const auto& c : r.a) key.push_back(c.str());
    auto& slot = best[key];
    int opi = (int)r.op;
    auto it = slot.find(opi);
    if (it == slot.end()) {
      slot[opi] = r.rhs;
      order.push_back({key, r});
    } else if (r.op == RelOp::Eq) {
      if (it->second != r.rhs) out.infeasible = true;
    } else if (r.rhs > it->second) {
      it->second = r.rhs;
    }
  }
  for (auto& [key, row] : order) {
    auto& slot = best[key];
    LinRow r = row;
    // Resolve Eq/Ge/Gt interplay for identical coefficient vectors.
    if (slot.count((int)RelOp::Eq)) {
      Rat e = slot[(int)RelOp::Eq];
      if (slot.count((int)RelOp::Ge) && slot[(int)RelOp::Ge] > e) out.infeasible = true;
      if (slot.count((int)RelOp::Gt) && slot[(int)RelOp::Gt] >= e) out.infeasible = true;
      if (r.op != RelOp::Eq) continue;
      r.rhs = e;
    } else if (slot.count((int)RelOp::Ge) && slot.count((int)RelOp::Gt)) {
      // keep the single dominating row
      Rat g = slot[(int)RelOp::Ge], t = slot[(int)RelOp::Gt];
      if (r.op == RelOp::Ge) {
        if (g <= t) continue;  // Gt dominates
        r.rhs = g;
      } else {
        if (g > t) continue;  // Ge dominates
        r.rhs = t;
      }
    } else {
      r.rhs = slot[(int)r.op];
    }
    out.rows.push_back(std::move(r));
  }
  if (out.infeasible) out.rows.clear();
  return out;
}

LinSystem eliminate(const LinSystem& s, int var) {
  LinSystem out;
  out.nvars = s.nvars;
  out.infeasible = s.infeasible;
  if (out.infeasible) return out;

  // Prefer an equality pivot: substitution keeps the system small.
  int piv = -1;
  for (size_t i = 0; i < s.rows.size(); ++i)
    if (s.rows[i].op == RelOp::Eq && !s.rows[i].a[var].is_zero()) { piv = (int)i; break; }
  if (piv >= 0) {
    const LinRow& e = s.rows[piv];
    for (size_t i = 0; i < s.rows.size(); ++i) {
      if ((int)i == piv) continue;
      LinRow r = s.rows[i];
      if (!r.a[var].is_zero()) {
        Rat f = r.a[var] / e.a[var];
        for (int j = 0; j < s.nvars; ++j) r.a[j] -= f * e.a[j];
        r.rhs -= f * e.rhs;
      }
      out.rows.push_back(std::move(r));
    }
    return normalize(std::move(out));
  }

  std::vector<const LinRow*> pos, neg;
  for (const auto& r : s.rows) {
    int sg = r.a[var].sign();
    if (sg > 0) pos.push_back(&r);
    else if (sg < 0) neg.push_back(&r);
    else out.rows.push_back(r);
  }
  for (const LinRow* p : pos)
    for (const LinRow* n : neg) {
      Rat cp = p->a[var], cn = -n->a[var];  // both positive multipliers: cn*p + cp*n
      LinRow r;
      r.a.resize(s.nvars);
      for (int j = 0; j < s.nvars; ++j) r.a[j] = cn * p->a[j] + cp * n->a[j];
      r.rhs = cn * p->rhs + cp * n->rhs;
      r.op = (p->op == RelOp::Gt || n->op == RelOp::Gt) ? RelOp::Gt : RelOp::Ge;
      out.rows.push_back(std::move(r));
    }
  return normalize(std::move(out));
}

LinSystem project_tail(LinSystem s, int keep) {
  s = normalize(std::move(s));
  for (int v = 0; v < s.nvars - keep; ++v) s = eliminate(s, v);
  // Drop the eliminated coordinates.
  LinSystem out;
  out.nvars = keep;
  out.infeasible = s.infeasible;
  for (auto& r : s.rows) {
    for (int v = 0; v < s.nvars - keep; ++v)
      if (!r.a[v].is_zero()) throw internal_error("project_tail: elimination left residue");
    LinRow nr;
    nr.a.assign(r.a.begin() + (s.nvars - keep), r.a.end());
    nr.rhs = r.rhs;
    nr.op = r.op;
    out.rows.push_back(std::move(nr));
  }
  return out;
}

bool fm_feasible(LinSystem s) {
  s = normalize(std::move(s));
  for (int v = 0; v < s.nvars; ++v) {
    if (s.infeasible) return false;
    s = eliminate(s, v);
  }
  return !s.infeasible;
}

}  // namespace horosark
