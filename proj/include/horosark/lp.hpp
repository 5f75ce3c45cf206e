#pragma once

#include <vector>

#include "horosark/linalg.hpp"

namespace horosark {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat value;
  RatVec x;  // free-variable values (empty unless Optimal)
};

// maximize c.x  subject to  Aeq x = beq,  Age x >= bge,  x free.
// Exact simplex, Bland's pivoting rule in both phases.
struct LinearProgram {
  int nvars = 0;
  RatVec c;
  std::vector<RatVec> aeq;
  RatVec beq;
  std::vector<RatVec> age;
  RatVec bge;

  void add_eq(RatVec a, Rat b) { aeq.push_back(std::move(a)); beq.push_back(std::move(b)); }
  void add_ge(RatVec a, Rat b) { age.push_back(std::move(a)); bge.push_back(std::move(b)); }
};

LpResult solve_lp(const LinearProgram& lp);

// Feasibility of {Aeq x = beq, Age x >= bge}.
bool lp_feasible(const LinearProgram& lp);

}  // namespace horosark
