#include "horosark/hpolytope.hpp"

#include <algorithm>
#include <map>

namespace horosark {

HPolytope::HPolytope(RatMatrix a, RatVec b) : a_(std::move(a)), b_(std::move(b)) {
  if ((int)b_.size() != a_.rows()) throw internal_error("HPolytope: row/rhs mismatch");
}

bool HPolytope::empty() const {
  if (!empty_) {
    LinearProgram lp;
    lp.nvars = a_.cols();
    lp.c.assign(lp.nvars, Rat());
    for (int r = 0; r < a_.rows(); ++r) lp.add_ge(a_.row(r), b_[r]);
    empty_ = !lp_feasible(lp);
  }
  return *empty_;
}

const std::vector<int>& HPolytope::identically_tight() const {
  if (!tight_) {
    std::vector<int> t;
    if (!empty()) {
      for (int r = 0; r < a_.rows(); ++r) {
        bool zero = std::all_of(a_.row(r).begin(), a_.row(r).end(),
                                [](const Rat& c) { return c.is_zero(); });
        if (zero) {
          if (b_[r].is_zero()) t.push_back(r);
          continue;
        }
        auto mx = maximize(*this, a_.row(r));
        if (mx && *mx == b_[r]) t.push_back(r);
      }
    }
    tight_ = std::move(t);
  }
  return *tight_;
}

int HPolytope::dim() const {
  if (empty()) return -1;
  return a_.cols() - rank(a_.select_rows(identically_tight()));
}

bool is_bounded(const RatMatrix& a) {
  int n = a.cols();
  for (int j = 0; j < n; ++j) {
    for (int sg : {1, -1}) {
      LinearProgram lp;
      lp.nvars = n;
      lp.c.assign(n, Rat());
      lp.c[j] = Rat(sg);
      for (int r = 0; r < a.rows(); ++r) lp.add_ge(a.row(r), Rat());
      for (int k = 0; k < n; ++k) {
        RatVec e(n);
        e[k] = Rat(1);
        lp.add_ge(e, Rat(-1));
        RatVec f(n);
        f[k] = Rat(-1);
        lp.add_ge(f, Rat(-1));
      }
      LpResult res = solve_lp(lp);
      if (res.status != LpStatus::Optimal) throw internal_error("is_bounded: boxed LP failed");
      if (!res.value.is_zero()) return false;
    }
  }
  return true;
}

bool face_nonempty(const HPolytope& p, const std::vector<int>& I, bool strict) {
  int n = p.dim_ambient();
  std::vector<bool> in_i(p.nrows(), false);
  for (int i : I) {
    if (i < 0 || i >= p.nrows()) throw internal_error("face_nonempty: row out of range");
    in_i[i] = true;
  }
  LinearProgram lp;
  lp.nvars = n + (strict ? 1 : 0);
  lp.c.assign(lp.nvars, Rat());
  if (strict) lp.c[n] = Rat(1);
  for (int r = 0; r < p.nrows(); ++r) {
    RatVec a = p.A().row(r);
    a.resize(lp.nvars);
    if (in_i[r]) {
      lp.add_eq(a, p.b()[r]);
    } else {
      if (strict) a[n] = Rat(-1);
      lp.add_ge(a, p.b()[r]);
    }
  }
  if (!strict) return lp_feasible(lp);
  RatVec cap(lp.nvars);
  cap[n] = Rat(-1);
  lp.add_ge(cap, Rat(-1));  // t <= 1
  LpResult res = solve_lp(lp);
  return res.status == LpStatus::Optimal && res.value.sign() > 0;
}

std::vector<Vertex> vertices(const HPolytope& p) {
  if (!is_bounded(p.A())) throw validation_error("vertices: unbounded constraint matrix");
  int n = p.dim_ambient(), m = p.nrows();
  std::vector<Vertex> out;
  if (p.empty()) return out;
  std::vector<int> comb(n);
  std::vector<RatVec> seen;
  auto try_subset = [&](const std::vector<int>& s) {
    RatMatrix sub = p.A().select_rows(s);
    if (rank(sub) != n) return;
    RatVec bs(n);
    for (int i = 0; i < n; ++i) bs[i] = p.b()[s[i]];
    auto sol = solve_affine(sub, bs);
    if (!sol) return;
    const RatVec& x = sol->point;
    for (int r = 0; r < m; ++r)
      if (dot(p.A().row(r), x) < p.b()[r]) return;
    if (std::find(seen.begin(), seen.end(), x) != seen.end()) return;
    seen.push_back(x);
    Vertex v;
    v.x = x;
    for (int r = 0; r < m; ++r)
      if (dot(p.A().row(r), x) == p.b()[r]) v.tight.push_back(r);
    out.push_back(std::move(v));
  };
  if (n == 0) {
    Vertex v;  // the origin of Q^0, every row is a constant condition
    for (int r = 0; r < m; ++r)
      if (p.b()[r].is_zero()) v.tight.push_back(r);
    out.push_back(std::move(v));
    return out;
  }
  // all n-subsets
  for (int i = 0; i < n; ++i) comb[i] = i;
  if (m < n) return out;
  while (true) {
    try_subset(comb);
    int i = n - 1;
    while (i >= 0 && comb[i] == m - n + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
  }
  std::sort(out.begin(), out.end(), [](const Vertex& a, const Vertex& b) { return a.x < b.x; });
  return out;
}

std::optional<Rat> minimize(const HPolytope& p, const RatVec& a) {
  LinearProgram lp;
  lp.nvars = p.dim_ambient();
  lp.c.resize(lp.nvars);
  for (int j = 0; j < lp.nvars; ++j) lp.c[j] = -a[j];
  for (int r = 0; r < p.nrows(); ++r) lp.add_ge(p.A().row(r), p.b()[r]);
  LpResult res = solve_lp(lp);
  if (res.status == LpStatus::Unbounded) return std::nullopt;
  if (res.status != LpStatus::Optimal) throw internal_error("minimize: infeasible polytope");
  return -res.value;
}

std::optional<Rat> maximize(const HPolytope& p, const RatVec& a) {
  RatVec na(a.size());
  for (size_t j = 0; j < a.size(); ++j) na[j] = -a[j];
  auto m = minimize(p, na);
  if (!m) return std::nullopt;
  return -*m;
}

RowReport nonredundant_rows(const HPolytope& p) {
  if (p.empty()) throw validation_error("nonredundant_rows: empty polytope");
  int m = p.nrows();
  RowReport rep;
  rep.status.assign(m, RowStatus::Redundant);
  for (int r = 0; r < m; ++r) {
    bool zero = std::all_of(p.A().row(r).begin(), p.A().row(r).end(),
                            [](const Rat& c) { return c.is_zero(); });
    if (zero) {
      rep.status[r] = p.b()[r].sign() <= 0 ? RowStatus::TrivialSatisfied
                                           : RowStatus::TrivialViolated;
      continue;
    }
    // Essential iff minimizing A_r x over the others drops below b_r.
    LinearProgram lp;
    lp.nvars = p.dim_ambient();
    lp.c.resize(lp.nvars);
    for (int j = 0; j < lp.nvars; ++j) lp.c[j] = -p.A().at(r, j);
    for (int q = 0; q < m; ++q)
      if (q != r) lp.add_ge(p.A().row(q), p.b()[q]);
    LpResult res = solve_lp(lp);
    bool essential = res.status == LpStatus::Unbounded ||
                     (res.status == LpStatus::Optimal && -res.value < p.b()[r]);
    if (essential) {
      rep.status[r] = RowStatus::Essential;
      rep.essential.push_back(r);
    }
  }
  return rep;
}

std::vector<std::vector<int>> facet_row_classes(const HPolytope& p) {
  if (p.empty()) return {};
  int m = p.nrows();
  // Group rows by normalized (a, b); duplicate constraints act as one.
  std::map<std::vector<std::string>, std::vector<int>> groups;
  std::vector<std::vector<std::string>> keyof(m);
  for (int r = 0; r < m; ++r) {
    RatVec a = p.A().row(r);
    Rat b = p.b()[r];
    int lead = -1;
    for (size_t i = 0; i < a.size(); ++i)
      if (!a[i].is_zero()) { lead = (int)i; break; }
    if (lead < 0) continue;  // zero rows define no facet
    Rat inv = Rat(1) / a[lead].abs();
    std::vector<std::string> key;
    for (auto& c : a) key.push_back((c * inv).str());
    key.push_back((b * inv).str());
    groups[key].push_back(r);
    keyof[r] = key;
  }
  std::vector<std::vector<int>> facets;
  for (auto& [key, rows] : groups) {
    // Remove the whole class; essential iff the set enlarges.
    LinearProgram lp;
    lp.nvars = p.dim_ambient();
    lp.c.resize(lp.nvars);
    int r0 = rows[0];
    for (int j = 0; j < lp.nvars; ++j) lp.c[j] = -p.A().at(r0, j);
    for (int q = 0; q < m; ++q)
      if (keyof[q] != key) lp.add_ge(p.A().row(q), p.b()[q]);
    LpResult res = solve_lp(lp);
    bool essential = res.status == LpStatus::Unbounded ||
                     (res.status == LpStatus::Optimal && -res.value < p.b()[r0]);
    if (essential) facets.push_back(rows);
  }
  std::sort(facets.begin(), facets.end());
  return facets;
}

LinSystem to_system(const HPolytope& p) {
  LinSystem s;
  s.nvars = p.dim_ambient();
  for (int r = 0; r < p.nrows(); ++r) s.add(p.A().row(r), p.b()[r], RelOp::Ge);
  return s;
}

}  // namespace horosark
