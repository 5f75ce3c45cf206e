#pragma once

#include <vector>

#include "horosark/rat.hpp"

namespace horosark {

enum class RelOp { Eq, Ge, Gt };

// One linear condition  a . x  (op)  rhs.
struct LinRow {
  RatVec a;
  Rat rhs;
  RelOp op = RelOp::Ge;
};

struct LinSystem {
  int nvars = 0;
  std::vector<LinRow> rows;
  bool infeasible = false;  // a contradictory constant row was derived

  void add(RatVec a, Rat rhs, RelOp op) { rows.push_back({std::move(a), std::move(rhs), op}); }
};

// Canonical scaling + constant-row resolution + duplicate/parallel pruning.
LinSystem normalize(LinSystem s);

// Fourier-Motzkin elimination of variable `var` (exact, strictness-aware).
LinSystem eliminate(const LinSystem& s, int var);

// Project onto the last `keep` variables by eliminating the first
// nvars-keep variables in order.
LinSystem project_tail(LinSystem s, int keep);

// Eliminates everything; feasibility of the original system. Independent of
// the simplex path, used as its oracle.
bool fm_feasible(LinSystem s);

}  // namespace horosark
