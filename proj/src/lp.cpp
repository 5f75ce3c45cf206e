#include "horosark/lp.hpp"

namespace horosark {

namespace {

// Dense tableau: rows m constraints (equalities in standard form, rhs >= 0),
// one objective row. Columns: structural vars then artificials, then rhs.
class Tableau {
 public:
  Tableau(int m, int ncols) : m_(m), n_(ncols), t_(m + 1, RatVec(ncols + 1)), basis_(m, -1) {}

  Rat& a(int r, int c) { return t_[r][c]; }
  Rat& rhs(int r) { return t_[r][n_]; }
  Rat& obj(int c) { return t_[m_][c]; }
  Rat& objval() { return t_[m_][n_]; }
  int basis(int r) const { return basis_[r]; }
  void set_basis(int r, int v) { basis_[r] = v; }
  int rows() const { return m_; }
  int cols() const { return n_; }

  void pivot(int r, int c) {
    Rat inv = Rat(1) / t_[r][c];
    for (int j = 0; j <= n_; ++j) t_[r][j] *= inv;
    for (int i = 0; i <= m_; ++i) {
      if (i == r || t_[i][c].is_zero()) continue;
      Rat f = t_[i][c];
      for (int j = 0; j <= n_; ++j) t_[i][j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  // Bland: entering = smallest column with negative reduced cost; leaving =
  // min ratio, ties broken by smallest basis variable. Returns status.
  LpStatus iterate(int limit_col) {
    while (true) {
      int enter = -1;
      for (int c = 0; c < limit_col; ++c)
        if (t_[m_][c].sign() < 0) { enter = c; break; }
      if (enter < 0) return LpStatus::Optimal;
      int leave = -1;
      Rat best;
      for (int i = 0; i < m_; ++i) {
        if (t_[i][enter].sign() <= 0) continue;
        Rat ratio = t_[i][n_] / t_[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return LpStatus::Unbounded;
      pivot(leave, enter);
    }
  }

 private:
  int m_, n_;
  std::vector<RatVec> t_;
  std::vector<int> basis_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  int n = lp.nvars;
  int me = (int)lp.aeq.size(), mg = (int)lp.age.size();
  int m = me + mg;
  // Standard form variables: x = u - v (2n), slacks for >= rows (mg),
  // artificials (m).
  int nu = 2 * n, nslack = mg;
  int nstruct = nu + nslack;
  int ncols = nstruct + m;
  Tableau t(m, ncols);

  auto fill_row = [&](int r, const RatVec& a, const Rat& b, int slack) {
    for (int j = 0; j < n; ++j) {
      t.a(r, j) = a[j];
      t.a(r, n + j) = -a[j];
    }
    if (slack >= 0) t.a(r, nu + slack) = Rat(-1);
    t.rhs(r) = b;
  };
  for (int i = 0; i < me; ++i) fill_row(i, lp.aeq[i], lp.beq[i], -1);
  for (int i = 0; i < mg; ++i) fill_row(me + i, lp.age[i], lp.bge[i], i);
  // Make rhs nonnegative, then install artificials.
  for (int r = 0; r < m; ++r) {
    if (t.rhs(r).sign() < 0)
      for (int j = 0; j <= ncols; ++j) {
        Rat& v = (j == ncols) ? t.rhs(r) : t.a(r, j);
        v = -v;
      }
    t.a(r, nstruct + r) = Rat(1);
    t.set_basis(r, nstruct + r);
  }
  // Phase 1: maximize -sum(artificials); objective row = sum of constraint
  // rows restricted to non-artificial columns (reduced costs for basis = arts).
  for (int j = 0; j < nstruct; ++j) {
    Rat s;
    for (int r = 0; r < m; ++r) s += t.a(r, j);
    t.obj(j) = -s;
  }
  {
    Rat s;
    for (int r = 0; r < m; ++r) s += t.rhs(r);
    t.objval() = -s;
  }
  LpStatus st = t.iterate(nstruct);
  if (st == LpStatus::Unbounded) throw internal_error("phase-1 unbounded");
  if (!t.objval().is_zero()) return {LpStatus::Infeasible, Rat(), {}};
  // Drive artificials out of the basis.
  for (int r = 0; r < m; ++r) {
    if (t.basis(r) < nstruct) continue;
    int c = -1;
    for (int j = 0; j < nstruct; ++j)
      if (!t.a(r, j).is_zero()) { c = j; break; }
    if (c >= 0) t.pivot(r, c);
    // else: redundant row; harmless to keep with the artificial at 0.
  }
  // Phase 2: true objective. Reduced costs: -c then add c_B * row for basics.
  for (int j = 0; j <= ncols; ++j) t.obj(j) = Rat();
  for (int j = 0; j < n; ++j) {
    t.obj(j) = -lp.c[j];
    t.obj(n + j) = lp.c[j];
  }
  for (int r = 0; r < m; ++r) {
    int b = t.basis(r);
    if (b >= nstruct) continue;
    Rat cb;
    if (b < n) cb = lp.c[b];
    else if (b < nu) cb = -lp.c[b - n];
    if (cb.is_zero()) continue;
    for (int j = 0; j <= ncols; ++j) {
      Rat& v = (j == ncols) ? t.objval() : t.obj(j);
      v += cb * ((j == ncols) ? t.rhs(r) : t.a(r, j));
    }
  }
  st = t.iterate(nstruct);
  if (st == LpStatus::Unbounded) return {LpStatus::Unbounded, Rat(), {}};
  RatVec x(n);
  for (int r = 0; r < m; ++r) {
    int b = t.basis(r);
    if (b < n) x[b] += t.rhs(r);
    else if (b < nu) x[b - n] -= t.rhs(r);
  }
  return {LpStatus::Optimal, t.objval(), std::move(x)};
}

bool lp_feasible(const LinearProgram& lp) {
  LinearProgram f = lp;
  f.c.assign(lp.nvars, Rat());
  LpResult r = solve_lp(f);
  return r.status == LpStatus::Optimal;
}

}  // namespace horosark
