#pragma once

#include <gmpxx.h>

#include <vector>

#include "horosark/linalg.hpp"

namespace horosark {

using ZVec = std::vector<mpz_class>;
using ZMat = std::vector<ZVec>;  // row-major

// Divide by the gcd of the entries, preserving orientation. Zero vectors pass
// through unchanged.
ZVec primitive(ZVec v);

// Row-style Hermite normal form of the lattice spanned by the input rows:
// zero rows dropped, pivots positive, entries above each pivot reduced into
// [0, pivot). Canonical for the spanned lattice.
ZMat hnf(ZMat rows);

// Sublattice of Z^ambient in canonical (HNF) basis form.
struct LatticeBasis {
  int ambient = 0;
  ZMat basis;  // HNF rows, linearly independent

  int rank() const { return (int)basis.size(); }
  bool operator==(const LatticeBasis&) const = default;

  static LatticeBasis from_rows(int ambient, ZMat rows);
};

// {x in Z^n : M x = 0} for an integer matrix M (rows x n).
LatticeBasis integer_kernel(const ZMat& m, int n);

// ker(A_I) over Q intersected with Z^n; A_I may have rational entries.
LatticeBasis lattice_intersect_kernel(const RatMatrix& a_i);

}  // namespace horosark
