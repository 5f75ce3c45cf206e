#include "horosark/lattice.hpp"

#include <algorithm>

namespace horosark {

ZVec primitive(ZVec v) {
  mpz_class g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0 || g == 1) return v;
  for (auto& x : v) x /= g;
  return v;
}

ZMat hnf(ZMat rows) {
  int m = (int)rows.size();
  if (m == 0) return rows;
  int n = (int)rows[0].size();
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    // Euclid on column c below row r.
    while (true) {
      int nz = -1;
      for (int i = r; i < m; ++i)
        if (rows[i][c] != 0) { nz = (nz < 0 || abs(rows[i][c]) < abs(rows[nz][c])) ? i : nz; }
      if (nz < 0) break;
      std::swap(rows[r], rows[nz]);
      bool clear = true;
      for (int i = r + 1; i < m; ++i) {
        if (rows[i][c] == 0) continue;
        mpz_class q = rows[i][c] / rows[r][c];  // truncated division is fine here
        for (int j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) clear = false;
      }
      if (clear) break;
    }
    if (rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (int j = 0; j < n; ++j) rows[r][j] = -rows[r][j];
    // Reduce entries above the pivot into [0, pivot).
    for (int i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
      if (q != 0)
        for (int j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

LatticeBasis LatticeBasis::from_rows(int ambient, ZMat rows) {
  for (auto& r : rows)
    if ((int)r.size() != ambient) throw internal_error("LatticeBasis: row size mismatch");
  return LatticeBasis{ambient, hnf(std::move(rows))};
}

LatticeBasis integer_kernel(const ZMat& m, int n) {
  // Column-HNF with a transformation: [A; I] column-reduced, kernel columns
  // of A read off under I. Work on the transpose with row operations.
  int rows = (int)m.size();
  ZMat t(n, ZVec(rows + n, 0));
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < rows; ++r) t[i][r] = m[r][i];
    t[i][rows + i] = 1;
  }
  // Row-reduce the first `rows` columns to echelon over Z.
  int rr = 0;
  for (int c = 0; c < rows && rr < n; ++c) {
    while (true) {
      int nz = -1;
      for (int i = rr; i < n; ++i)
        if (t[i][c] != 0) { nz = (nz < 0 || abs(t[i][c]) < abs(t[nz][c])) ? i : nz; }
      if (nz < 0) break;
      std::swap(t[rr], t[nz]);
      bool clear = true;
      for (int i = rr + 1; i < n; ++i) {
        if (t[i][c] == 0) continue;
        mpz_class q = t[i][c] / t[rr][c];
        for (int j = 0; j < rows + n; ++j) t[i][j] -= q * t[rr][j];
        if (t[i][c] != 0) clear = false;
      }
      if (clear) break;
    }
    if (rr < n && t[rr][c] != 0) ++rr;
  }
  ZMat ker;
  for (int i = rr; i < n; ++i) {
    bool zero = true;
    for (int c = 0; c < rows; ++c)
      if (t[i][c] != 0) { zero = false; break; }
    if (!zero) throw internal_error("integer_kernel: echelon failure");
    ker.emplace_back(t[i].begin() + rows, t[i].end());
  }
  return LatticeBasis::from_rows(n, std::move(ker));
}

LatticeBasis lattice_intersect_kernel(const RatMatrix& a_i) {
  int n = a_i.cols();
  ZMat m;
  for (int r = 0; r < a_i.rows(); ++r) {
    mpz_class l = 1;
    for (int c = 0; c < n; ++c) l = lcm(l, a_i.at(r, c).den());
    ZVec row(n);
    for (int c = 0; c < n; ++c) row[c] = a_i.at(r, c).num() * (l / a_i.at(r, c).den());
    m.push_back(std::move(row));
  }
  return integer_kernel(m, n);
}

}  // namespace horosark
