#pragma once

#include <string>
#include <vector>

#include "horosark/hpolytope.hpp"
#include "horosark/lattice.hpp"

namespace horosark {

enum class RowKind { Ray, Color };

struct EmbRow {
  int id = 0;  // 1-based, as in the input file
  RowKind kind = RowKind::Ray;
  ZVec vector;          // primitive x_i for rays; alpha^vee_M for colors (may be 0)
  Rat acoeff = Rat(1);  // 1 for rays; a_alpha >= 2 for colors
};

// Combinatorial avatar of G/H and of the ambient embedding Z: the lattice
// rank plus the B-stable divisor rows.
struct EmbeddingData {
  int lattice_rank = 0;
  std::vector<EmbRow> rows;

  int p() const { return (int)rows.size(); }
  std::vector<int> color_rows() const;  // 0-based indices (J0)
  std::vector<int> ray_rows() const;    // 0-based indices (I0 \ J0)
  RatMatrix pairing_matrix() const;     // p x n over Q
  RatVec anticanonical() const;         // the column C

  void validate() const;  // throws validation_error
};

using DivisorCoeffs = RatVec;  // per-row coefficient d_i / a_alpha

// v0 bookkeeping: the color-coefficient part of a divisor.
struct WeightOffset {
  std::vector<std::pair<int, Rat>> color_coeffs;  // (row id, coefficient)
  bool operator==(const WeightOffset&) const = default;
};

WeightOffset weight_offset(const EmbeddingData& e, const DivisorCoeffs& d);

// {m : <m, row> >= -d_row for every row} (the all-rows convention).
HPolytope pseudo_moment_polytope(const EmbeddingData& e, const DivisorCoeffs& d);

}  // namespace horosark
