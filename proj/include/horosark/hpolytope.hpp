#pragma once

#include <optional>
#include <vector>

#include "horosark/fm.hpp"
#include "horosark/linalg.hpp"
#include "horosark/lp.hpp"

namespace horosark {

// H-representation polytope {x in Q^n : A x >= b}. Immutable after
// construction; all queries are pure.
class HPolytope {
 public:
  HPolytope(RatMatrix a, RatVec b);

  const RatMatrix& A() const { return a_; }
  const RatVec& b() const { return b_; }
  int dim_ambient() const { return a_.cols(); }
  int nrows() const { return a_.rows(); }

  bool empty() const;
  // Dimension of the polytope (-1 if empty).
  int dim() const;
  // Rows tight on all of the polytope (the implicit equality set).
  const std::vector<int>& identically_tight() const;

 private:
  RatMatrix a_;
  RatVec b_;
  mutable std::optional<bool> empty_;
  mutable std::optional<std::vector<int>> tight_;
};

struct Vertex {
  RatVec x;
  std::vector<int> tight;  // maximal tight row set, sorted
  bool operator==(const Vertex&) const = default;
};

// Condition BDD: {x : Ax >= 0} = {0}.
bool is_bounded(const RatMatrix& a);

// F_I nonempty; strict=true additionally demands A_i x > b_i off I
// (slack-maximization LP, optimum > 0).
bool face_nonempty(const HPolytope& p, const std::vector<int>& I, bool strict);

// Exact vertex list, lexicographically sorted, each with its maximal tight
// set. Requires is_bounded(A).
std::vector<Vertex> vertices(const HPolytope& p);

enum class RowStatus { Essential, Redundant, TrivialSatisfied, TrivialViolated };

struct RowReport {
  std::vector<RowStatus> status;       // per row
  std::vector<int> essential;          // sorted row indices
};

// Rows whose removal strictly enlarges the solution set; zero rows reported
// separately. Requires the polytope nonempty.
RowReport nonredundant_rows(const HPolytope& p);

// min of a.x over the polytope; nullopt if unbounded below.
std::optional<Rat> minimize(const HPolytope& p, const RatVec& a);
std::optional<Rat> maximize(const HPolytope& p, const RatVec& a);

// Facet row classes of a full-dimensional polytope: groups of identical
// constraints that cannot be removed jointly. Returns, for each facet, the
// sorted list of row indices carrying it.
std::vector<std::vector<int>> facet_row_classes(const HPolytope& p);

LinSystem to_system(const HPolytope& p);

}  // namespace horosark
