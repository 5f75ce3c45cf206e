#pragma once

#include <optional>
#include <vector>

#include "horosark/rat.hpp"

namespace horosark {

// Dense matrix over Q. Rows are the primary unit (constraint rows, lattice
// pairings), so storage is row-major vectors.
class RatMatrix {
 public:
  RatMatrix() : rows_(0), cols_(0) {}
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(rows, RatVec(cols)) {}
  static RatMatrix from_rows(std::vector<RatVec> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& at(int r, int c) { return e_[r][c]; }
  const Rat& at(int r, int c) const { return e_[r][c]; }
  const RatVec& row(int r) const { return e_[r]; }

  RatMatrix select_rows(const std::vector<int>& idx) const;
  RatMatrix transpose() const;

  bool operator==(const RatMatrix&) const = default;

 private:
  int rows_, cols_;
  std::vector<RatVec> e_;
};

int rank(const RatMatrix& a);

// Basis of ker(a) as vectors in Q^cols, from the reduced row echelon form
// (free-column parametrization, deterministic).
std::vector<RatVec> kernel_basis(const RatMatrix& a);

struct AffineSolution {
  RatVec point;                  // one solution of A x = b
  std::vector<RatVec> kernel;    // basis of ker A
};

// Solves A x = b exactly; nullopt on inconsistency.
std::optional<AffineSolution> solve_affine(const RatMatrix& a, const RatVec& b);

// All minimal linearly dependent row-index sets (0-based), including
// singletons {i} with zero row i. Sorted lexicographically.
std::vector<std::vector<int>> circuits(const RatMatrix& a);

// The 1-dimensional relation space of a circuit: lambda with
// sum lambda_i A_i = 0, support exactly the circuit, first entry positive.
RatVec circuit_relation(const RatMatrix& a, const std::vector<int>& circuit);

}  // namespace horosark
