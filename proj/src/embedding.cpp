#include "horosark/embedding.hpp"

namespace horosark {

std::vector<int> EmbeddingData::color_rows() const {
  std::vector<int> out;
  for (int r = 0; r < p(); ++r)
    if (rows[r].kind == RowKind::Color) out.push_back(r);
  return out;
}

std::vector<int> EmbeddingData::ray_rows() const {
  std::vector<int> out;
  for (int r = 0; r < p(); ++r)
    if (rows[r].kind == RowKind::Ray) out.push_back(r);
  return out;
}

RatMatrix EmbeddingData::pairing_matrix() const {
  RatMatrix m(p(), lattice_rank);
  for (int r = 0; r < p(); ++r)
    for (int c = 0; c < lattice_rank; ++c) m.at(r, c) = Rat(rows[r].vector[c]);
  return m;
}

RatVec EmbeddingData::anticanonical() const {
  RatVec c(p());
  for (int r = 0; r < p(); ++r) c[r] = rows[r].acoeff;
  return c;
}

void EmbeddingData::validate() const {
  if (lattice_rank < 1) throw validation_error("lattice rank must be >= 1");
  if (rows.empty()) throw validation_error("embedding has no rows");
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = i + 1; j < rows.size(); ++j)
      if (rows[i].kind == RowKind::Ray && rows[j].kind == RowKind::Ray &&
          rows[i].vector == rows[j].vector)
        throw validation_error("ray rows " + std::to_string(rows[i].id) + " and " +
                               std::to_string(rows[j].id) + " repeat the same primitive vector");
  for (int r = 0; r < p(); ++r) {
    const EmbRow& row = rows[r];
    if (row.id != r + 1)
      throw validation_error("row ids must be 1..p in order (row " + std::to_string(r) + ")");
    if ((int)row.vector.size() != lattice_rank)
      throw validation_error("row " + std::to_string(row.id) + ": vector length != lattice rank");
    if (row.kind == RowKind::Ray) {
      bool zero = true;
      for (const auto& x : row.vector)
        if (x != 0) zero = false;
      if (zero) throw validation_error("ray row " + std::to_string(row.id) + " is the zero vector");
      if (primitive(row.vector) != row.vector)
        throw validation_error("ray row " + std::to_string(row.id) + " is not primitive");
      if (row.acoeff != Rat(1))
        throw validation_error("ray row " + std::to_string(row.id) + " must have anticanonical coefficient 1");
    } else {
      if (!row.acoeff.is_integer() || row.acoeff < Rat(2))
        throw validation_error("color row " + std::to_string(row.id) +
                               " must have integer anticanonical coefficient >= 2");
    }
  }
}

WeightOffset weight_offset(const EmbeddingData& e, const DivisorCoeffs& d) {
  WeightOffset w;
  for (int r : e.color_rows()) w.color_coeffs.push_back({e.rows[r].id, d[r]});
  return w;
}

HPolytope pseudo_moment_polytope(const EmbeddingData& e, const DivisorCoeffs& d) {
  if ((int)d.size() != e.p()) throw validation_error("divisor length != row count");
  RatVec b(e.p());
  for (int r = 0; r < e.p(); ++r) b[r] = -d[r];
  return HPolytope(e.pairing_matrix(), b);
}

}  // namespace horosark
