#pragma once

#include <vector>

#include "horosark/embedding.hpp"

namespace horosark {

// Maximal colored cone in the reduced lattice N': primitive inward facet
// normals plus the color ids whose pairing vector lies in the cone and whose
// wall passes through the vertex.
struct ColoredCone {
  ZMat gens;                // sorted lexicographically
  std::vector<int> colors;  // sorted color row ids
  bool operator==(const ColoredCone&) const = default;
  bool operator<(const ColoredCone& o) const {
    return gens != o.gens ? gens < o.gens : colors < o.colors;
  }
};

// The combinatorial identity of the horospherical variety attached to a
// polytope: descriptor equality is variety equality.
struct VarietyDescriptor {
  int ambient_rank = 0;
  LatticeBasis sublattice;  // M' in canonical HNF form
  std::vector<int> colors;  // surviving open-orbit color ids, sorted
  std::vector<int> wall_contacts;  // color ids identically tight, sorted
  std::vector<std::pair<int, ZVec>> color_vectors;  // reduced alpha^vee per surviving color
  std::vector<ColoredCone> cones;  // canonical order
  int dim = 0;                     // rank of the sublattice

  bool operator==(const VarietyDescriptor&) const = default;
};

std::string to_string(const VarietyDescriptor& v);

// Reads off M', wall contacts, surviving colors and the maximal colored
// cones from a nonempty polytope built on the embedding's rows.
VarietyDescriptor variety_from_polytope(const EmbeddingData& e, const HPolytope& p);
VarietyDescriptor variety_from_divisor(const EmbeddingData& e, const DivisorCoeffs& d);

bool qfactorial(const VarietyDescriptor& v);

// #B-stable prime divisors minus rank: uncolored fan edges + surviving
// colors - dim. Requires qfactorial.
int picard_number(const VarietyDescriptor& v);

// Same count without the qfactorial gate, for relative-Picard bookkeeping.
int picard_count(const VarietyDescriptor& v);

// h_D as per-maximal-cone linear forms: the piece on cone(A_i : i in tight)
// is y -> <-form, y>, so h(x_i) equals the divisor coefficient on each ray.
struct PlfPiece {
  std::vector<int> tight;  // vertex tight set of the reference polytope
  RatVec form;             // m with A_{tight} m = -d_{tight}
};
using PiecewiseLinearFunction = std::vector<PlfPiece>;

// The support function of d_prime on the fan determined by the ample
// reference; nullopt when d_prime is not Q-Cartier there.
std::optional<PiecewiseLinearFunction> support_function(const EmbeddingData& e,
                                                        const DivisorCoeffs& d_ref,
                                                        const DivisorCoeffs& d_prime);

// Evaluates h at y via the piece whose cone contains y; errors when y lies
// outside the support.
Rat evaluate_plf(const EmbeddingData& e, const PiecewiseLinearFunction& h, const RatVec& y);

struct DivisorFlags {
  bool qcartier = false;
  bool cartier = false;
  bool qfactorial = false;
  bool ample = false;
  bool nef = false;
};

// Tests d_prime against the variety defined by the ample reference d_ref.
DivisorFlags divisor_tests(const EmbeddingData& e, const DivisorCoeffs& d_ref,
                           const DivisorCoeffs& d_prime);

// Image of the nef contraction given by d_nef on the variety of d_ref.
VarietyDescriptor contract_nef(const EmbeddingData& e, const DivisorCoeffs& d_ref,
                               const DivisorCoeffs& d_nef);

// Pullback of a divisor on X (facet rows x_rows, coefficients d at those
// rows) to the ambient embedding: exceptional ray rows get h_D(e_j), color
// and X rows are copied.
DivisorCoeffs pullback_divisor(const EmbeddingData& e, const DivisorCoeffs& d,
                               const std::vector<int>& x_rows);

// Equivalence of pseudo-moment polytopes on the same embedding (same
// half-space face structure and wall contacts) = descriptor equality.
bool polytopes_equivalent(const EmbeddingData& e, const HPolytope& p1, const HPolytope& p2);

}  // namespace horosark
