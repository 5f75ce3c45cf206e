#include "horosark/linalg.hpp"

#include <algorithm>

namespace horosark {

RatMatrix RatMatrix::from_rows(std::vector<RatVec> rows) {
  RatMatrix m;
  m.rows_ = (int)rows.size();
  m.cols_ = rows.empty() ? 0 : (int)rows[0].size();
  for (auto& r : rows)
    if ((int)r.size() != m.cols_) throw internal_error("ragged matrix rows");
  m.e_ = std::move(rows);
  return m;
}

RatMatrix RatMatrix::select_rows(const std::vector<int>& idx) const {
  RatMatrix m((int)idx.size(), cols_);
  for (size_t i = 0; i < idx.size(); ++i) m.e_[i] = e_[idx[i]];
  return m;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix m(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m.e_[c][r] = e_[r][c];
  return m;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(std::vector<RatVec>& m, int cols) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < (int)m.size(); ++c) {
    int sel = -1;
    for (int i = r; i < (int)m.size(); ++i)
      if (!m[i][c].is_zero()) { sel = i; break; }
    if (sel < 0) continue;
    std::swap(m[r], m[sel]);
    Rat inv = Rat(1) / m[r][c];
    for (int j = c; j < cols; ++j) m[r][j] *= inv;
    for (int i = 0; i < (int)m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Rat f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

int rank(const RatMatrix& a) {
  std::vector<RatVec> m;
  m.reserve(a.rows());
  for (int r = 0; r < a.rows(); ++r) m.push_back(a.row(r));
  return (int)rref(m, a.cols()).size();
}

std::vector<RatVec> kernel_basis(const RatMatrix& a) {
  std::vector<RatVec> m;
  for (int r = 0; r < a.rows(); ++r) m.push_back(a.row(r));
  int n = a.cols();
  std::vector<int> pivots = rref(m, n);
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    RatVec v(n);
    v[c] = Rat(1);
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<AffineSolution> solve_affine(const RatMatrix& a, const RatVec& b) {
  if ((int)b.size() != a.rows()) throw internal_error("solve_affine: dimension mismatch");
  int n = a.cols();
  std::vector<RatVec> m;
  for (int r = 0; r < a.rows(); ++r) {
    RatVec row = a.row(r);
    row.push_back(b[r]);
    m.push_back(std::move(row));
  }
  std::vector<int> pivots = rref(m, n + 1);
  for (int c : pivots)
    if (c == n) return std::nullopt;  // row (0 ... 0 | 1): inconsistent
  RatVec x(n);
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = m[i][n];
  return AffineSolution{std::move(x), kernel_basis(a)};
}

std::vector<std::vector<int>> circuits(const RatMatrix& a) {
  int p = a.rows(), n = a.cols();
  std::vector<std::vector<int>> out;
  auto contains_known = [&](const std::vector<int>& s) {
    for (const auto& c : out)
      if (std::includes(s.begin(), s.end(), c.begin(), c.end())) return true;
    return false;
  };
  // A circuit in Q^n has at most n+1 elements.
  int maxk = std::min(p, n + 1);
  std::vector<int> comb;
  auto test = [&](const std::vector<int>& s) {
    RatMatrix sub = a.select_rows(s);
    if (rank(sub) != (int)s.size() - 1) return false;
    for (size_t i = 0; i < s.size(); ++i) {
      std::vector<int> t;
      for (size_t j = 0; j < s.size(); ++j)
        if (j != i) t.push_back(s[j]);
      if (rank(a.select_rows(t)) != (int)t.size()) return false;
    }
    return true;
  };
  for (int k = 1; k <= maxk; ++k) {
    comb.assign(k, 0);
    for (int i = 0; i < k; ++i) comb[i] = i;
    while (true) {
      if (!contains_known(comb) && test(comb)) out.push_back(comb);
      int i = k - 1;
      while (i >= 0 && comb[i] == p - k + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

RatVec circuit_relation(const RatMatrix& a, const std::vector<int>& circuit) {
  RatMatrix sub = a.select_rows(circuit);
  auto ker = kernel_basis(sub.transpose());
  if (ker.size() != 1)
    throw internal_error("circuit_relation: relation space is not 1-dimensional");
  RatVec lam = ker[0];
  for (const Rat& l : lam)
    if (l.is_zero()) throw internal_error("circuit_relation: zero coefficient on circuit");
  if (lam[0].sign() < 0)
    for (Rat& l : lam) l = -l;
  return lam;
}

}  // namespace horosark
