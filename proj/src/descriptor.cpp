#include "horosark/descriptor.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace horosark {

namespace {

ZVec reduced_row(const EmbeddingData& e, int row, const LatticeBasis& sub) {
  ZVec out(sub.rank(), 0);
  for (int k = 0; k < sub.rank(); ++k)
    for (int c = 0; c < e.lattice_rank; ++c)
      out[k] += e.rows[row].vector[c] * sub.basis[k][c];
  return out;
}

bool is_zero_vec(const ZVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

bool parallel_same_dir(const ZVec& a, const ZVec& b) {
  return primitive(a) == primitive(b);
}

}  // namespace

std::string to_string(const VarietyDescriptor& v) {
  std::ostringstream os;
  os << "rank " << v.dim << "/" << v.ambient_rank;
  os << " colors{";
  for (size_t i = 0; i < v.colors.size(); ++i) os << (i ? "," : "") << v.colors[i];
  os << "} walls{";
  for (size_t i = 0; i < v.wall_contacts.size(); ++i) os << (i ? "," : "") << v.wall_contacts[i];
  os << "} cones[";
  for (size_t i = 0; i < v.cones.size(); ++i) {
    if (i) os << " ";
    os << "(";
    for (size_t g = 0; g < v.cones[i].gens.size(); ++g) {
      if (g) os << ";";
      for (size_t c = 0; c < v.cones[i].gens[g].size(); ++c)
        os << (c ? "," : "") << v.cones[i].gens[g][c].get_str();
    }
    os << "|";
    for (size_t c = 0; c < v.cones[i].colors.size(); ++c)
      os << (c ? "," : "") << v.cones[i].colors[c];
    os << ")";
  }
  os << "]";
  return os.str();
}

VarietyDescriptor variety_from_polytope(const EmbeddingData& e, const HPolytope& p) {
  if (p.empty()) throw validation_error("variety_from_polytope: empty polytope");
  int n = e.lattice_rank;
  VarietyDescriptor v;
  v.ambient_rank = n;

  const std::vector<int>& tight = p.identically_tight();
  std::set<int> tight_set(tight.begin(), tight.end());

  v.sublattice = lattice_intersect_kernel(p.A().select_rows(tight));
  v.dim = v.sublattice.rank();

  for (int r : e.color_rows()) {
    if (tight_set.count(r))
      v.wall_contacts.push_back(e.rows[r].id);
    else
      v.colors.push_back(e.rows[r].id);
  }
  for (int r : e.color_rows())
    if (!tight_set.count(r)) v.color_vectors.push_back({e.rows[r].id, reduced_row(e, r, v.sublattice)});

  if (v.dim == 0) return v;  // point polytope: trivial fan

  // Reduce to full dimension: x = x0 + y * basis, keep non-tight rows.
  RatVec x0 = vertices(p)[0].x;
  std::vector<int> kept;  // original row index per reduced row
  std::vector<RatVec> ra;
  RatVec rb;
  for (int r = 0; r < p.nrows(); ++r) {
    if (tight_set.count(r)) continue;
    ZVec red = reduced_row(e, r, v.sublattice);
    RatVec a(v.dim);
    for (int k = 0; k < v.dim; ++k) a[k] = Rat(red[k]);
    ra.push_back(std::move(a));
    rb.push_back(p.b()[r] - dot(p.A().row(r), x0));
    kept.push_back(r);
  }
  HPolytope reduced(RatMatrix::from_rows(std::move(ra)), std::move(rb));

  std::vector<std::vector<int>> facets = facet_row_classes(reduced);
  std::set<int> facet_rows;  // reduced-row indices that carry a facet
  for (const auto& f : facets)
    for (int r : f) facet_rows.insert(r);

  for (const Vertex& vert : vertices(reduced)) {
    ColoredCone cone;
    std::set<ZVec> gen_seen;
    for (int rr : vert.tight) {
      ZVec red = reduced_row(e, kept[rr], v.sublattice);
      if (is_zero_vec(red)) continue;
      if (e.rows[kept[rr]].kind == RowKind::Color) {
        cone.colors.push_back(e.rows[kept[rr]].id);
        if (!facet_rows.count(rr)) continue;  // wall through the vertex, not a facet
      }
      if (!facet_rows.count(rr)) continue;
      ZVec g = primitive(red);
      if (gen_seen.insert(g).second) cone.gens.push_back(std::move(g));
    }
    std::sort(cone.gens.begin(), cone.gens.end());
    std::sort(cone.colors.begin(), cone.colors.end());
    cone.colors.erase(std::unique(cone.colors.begin(), cone.colors.end()), cone.colors.end());
    v.cones.push_back(std::move(cone));
  }
  std::sort(v.cones.begin(), v.cones.end());
  return v;
}

VarietyDescriptor variety_from_divisor(const EmbeddingData& e, const DivisorCoeffs& d) {
  return variety_from_polytope(e, pseudo_moment_polytope(e, d));
}

bool qfactorial(const VarietyDescriptor& v) {
  for (const auto& cone : v.cones) {
    if ((int)cone.gens.size() != v.dim) return false;
    std::map<ZVec, int> per_ray;
    for (int cid : cone.colors) {
      ZVec av;
      for (const auto& [id, vec] : v.color_vectors)
        if (id == cid) av = vec;
      bool on_ray = false;
      for (const auto& g : cone.gens)
        if (parallel_same_dir(av, g)) {
          on_ray = true;
          ++per_ray[g];
        }
      if (!on_ray) return false;
    }
    for (const auto& [g, cnt] : per_ray)
      if (cnt > 1) return false;  // two colors share a ray: some vertex tight set is dependent
  }
  return true;
}

int picard_count(const VarietyDescriptor& v) {
  std::set<ZVec> edges;
  for (const auto& cone : v.cones)
    for (const auto& g : cone.gens) edges.insert(g);
  // colors whose pairing vector spans an edge, grouped per edge
  std::map<ZVec, std::set<int>> colors_on_edge;
  std::set<int> off_ray_colors;
  for (const auto& cone : v.cones)
    for (int cid : cone.colors) {
      ZVec av;
      for (const auto& [id, vec] : v.color_vectors)
        if (id == cid) av = vec;
      bool on_ray = false;
      for (const auto& g : cone.gens)
        if (parallel_same_dir(av, g)) {
          colors_on_edge[g].insert(cid);
          on_ray = true;
        }
      if (!on_ray) off_ray_colors.insert(cid);
    }
  int uncolored = 0;
  for (const auto& g : edges)
    if (!colors_on_edge.count(g)) ++uncolored;
  // Each extra divisor on a ray and each in-cone color off every ray imposes
  // one Q-Cartier relation on divisor classes.
  int relations = (int)off_ray_colors.size();
  for (const auto& [g, cs] : colors_on_edge) relations += (int)cs.size() - 1;
  return uncolored + (int)v.colors.size() - v.dim - relations;
}

int picard_number(const VarietyDescriptor& v) {
  if (!qfactorial(v)) throw validation_error("picard_number: descriptor is not Q-factorial");
  return picard_count(v);
}

std::optional<PiecewiseLinearFunction> support_function(const EmbeddingData& e,
                                                        const DivisorCoeffs& d_ref,
                                                        const DivisorCoeffs& d_prime) {
  HPolytope ref = pseudo_moment_polytope(e, d_ref);
  if (ref.empty() || ref.dim() != e.lattice_rank || !ref.identically_tight().empty())
    throw validation_error("divisor_tests: reference divisor is not ample");
  PiecewiseLinearFunction h;
  for (const Vertex& v : vertices(ref)) {
    RatMatrix sub = ref.A().select_rows(v.tight);
    RatVec rhs(v.tight.size());
    for (size_t i = 0; i < v.tight.size(); ++i) rhs[i] = -d_prime[v.tight[i]];
    auto sol = solve_affine(sub, rhs);
    if (!sol) return std::nullopt;
    h.push_back({v.tight, sol->point});
  }
  return h;
}

Rat evaluate_plf(const EmbeddingData& e, const PiecewiseLinearFunction& h, const RatVec& y) {
  RatMatrix a = e.pairing_matrix();
  for (const PlfPiece& piece : h) {
    // y in cone(A_i : i in tight)? nonnegative combination via an LP
    LinearProgram lp;
    lp.nvars = (int)piece.tight.size();
    lp.c.assign(lp.nvars, Rat());
    for (int c = 0; c < e.lattice_rank; ++c) {
      RatVec row(lp.nvars);
      for (int k = 0; k < lp.nvars; ++k) row[k] = a.at(piece.tight[k], c);
      lp.add_eq(row, y[c]);
    }
    for (int k = 0; k < lp.nvars; ++k) {
      RatVec pos(lp.nvars);
      pos[k] = Rat(1);
      lp.add_ge(pos, Rat());
    }
    if (lp_feasible(lp)) return -dot(piece.form, y);
  }
  throw validation_error("evaluate_plf: point outside the support of the fan");
}

DivisorFlags divisor_tests(const EmbeddingData& e, const DivisorCoeffs& d_ref,
                           const DivisorCoeffs& d_prime) {
  HPolytope ref = pseudo_moment_polytope(e, d_ref);
  if (ref.empty() || ref.dim() != e.lattice_rank || !ref.identically_tight().empty())
    throw validation_error("divisor_tests: reference divisor is not ample");
  std::vector<Vertex> verts = vertices(ref);

  DivisorFlags f;
  f.qfactorial = true;
  for (const Vertex& v : verts)
    if ((int)v.tight.size() != e.lattice_rank) f.qfactorial = false;

  RatVec bp(e.p());
  for (int r = 0; r < e.p(); ++r) bp[r] = -d_prime[r];

  auto h = support_function(e, d_ref, d_prime);
  f.qcartier = h.has_value();
  if (!f.qcartier) return f;
  bool integral_forms = true, strict_all = true, weak_all = true;
  for (const PlfPiece& piece : *h) {
    for (const Rat& c : piece.form)
      if (!c.is_integer()) integral_forms = false;
    std::set<int> in(piece.tight.begin(), piece.tight.end());
    for (int j = 0; j < e.p(); ++j) {
      if (in.count(j)) continue;
      Rat val = dot(ref.A().row(j), piece.form);
      if (val <= bp[j]) strict_all = false;
      if (val < bp[j]) weak_all = false;
    }
  }
  bool integral_coeffs = true;
  for (const Rat& c : d_prime)
    if (!c.is_integer()) integral_coeffs = false;
  f.cartier = integral_coeffs && integral_forms;
  f.ample = strict_all;
  f.nef = weak_all;
  return f;
}

VarietyDescriptor contract_nef(const EmbeddingData& e, const DivisorCoeffs& d_ref,
                               const DivisorCoeffs& d_nef) {
  DivisorFlags f = divisor_tests(e, d_ref, d_nef);
  if (!f.nef) throw validation_error("contract_nef: divisor is not nef");
  return variety_from_divisor(e, d_nef);
}

DivisorCoeffs pullback_divisor(const EmbeddingData& e, const DivisorCoeffs& d,
                               const std::vector<int>& x_rows) {
  std::set<int> xr(x_rows.begin(), x_rows.end());
  std::vector<RatVec> ra;
  RatVec rb;
  for (int r : x_rows) {
    ra.push_back(e.pairing_matrix().row(r));
    rb.push_back(-d[r]);
  }
  HPolytope px(RatMatrix::from_rows(std::move(ra)), std::move(rb));
  if (px.empty()) throw validation_error("pullback_divisor: empty reference polytope");

  // the piecewise linear function of D on the fan of X, with tight sets
  // mapped back into the ambient row indexing
  PiecewiseLinearFunction h;
  for (const Vertex& v : vertices(px)) {
    PlfPiece piece;
    for (int i : v.tight) piece.tight.push_back(x_rows[i]);
    piece.form = v.x;
    h.push_back(std::move(piece));
  }

  DivisorCoeffs out = d;
  for (int r = 0; r < e.p(); ++r) {
    if (xr.count(r) || e.rows[r].kind == RowKind::Color) continue;
    RatVec y(e.lattice_rank);
    for (int c = 0; c < e.lattice_rank; ++c) y[c] = Rat(e.rows[r].vector[c]);
    out[r] = evaluate_plf(e, h, y);
  }
  return out;
}

bool polytopes_equivalent(const EmbeddingData& e, const HPolytope& p1, const HPolytope& p2) {
  if (p1.empty() || p2.empty()) throw validation_error("polytopes_equivalent: empty polytope");
  return variety_from_polytope(e, p1) == variety_from_polytope(e, p2);
}

}  // namespace horosark
