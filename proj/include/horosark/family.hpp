#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "horosark/descriptor.hpp"

namespace horosark {

struct ParamPoint {
  Rat delta, eps;
  bool operator==(const ParamPoint&) const = default;
  bool operator<(const ParamPoint& o) const {
    return delta != o.delta ? delta < o.delta : eps < o.eps;
  }
};

// Affine line a*eps + b*delta + c = 0 in the (delta, eps)-plane. Slopes are
// stored as b/a; the geometric d(eps)/d(delta) is -b/a.
struct ParamLine {
  Rat a, b, c;
  bool proper() const { return !a.is_zero() || !b.is_zero(); }
  bool contains(const ParamPoint& q) const {
    return (a * q.eps + b * q.delta + c).is_zero();
  }
  // direction of travel: (delta, eps) += t * (a, -b)
  bool operator==(const ParamLine&) const = default;
};

std::optional<ParamPoint> intersect(const ParamLine& l1, const ParamLine& l2);

// sum lambda_i A_i = 0 with the normalization sum(lambda C) in {0,1}; when 0,
// sum(lambda (B'-B)) = 1. Support is the set of nonzero coefficients.
struct Relation {
  std::vector<int> support;  // 0-based row indices, sorted
  RatVec lambda;             // aligned with support
  Rat sum_c, sum_bpp, sum_b;
  std::vector<int> pos, neg;  // I+ and I- (0-based)

  ParamLine line() const { return {sum_c, sum_bpp, sum_b}; }
  bool one_sided() const { return pos.empty() || neg.empty(); }
  bool degenerate_line() const { return sum_c.is_zero() && sum_bpp.is_zero(); }
};

struct TwoParamFamily {
  EmbeddingData emb;
  RatVec B, Bprime;

  // derived on construction
  RatMatrix A;
  RatVec C, Bpp;  // anticanonical column and B'-B
  std::vector<std::vector<int>> circs;  // circuits of A, 0-based
  std::vector<Relation> circ_rel;       // normalized relation per circuit

  static TwoParamFamily make(EmbeddingData emb, RatVec b, RatVec bprime);

  int p() const { return A.rows(); }
  int n() const { return A.cols(); }
  RatVec rhs(const ParamPoint& q) const;
  HPolytope polytope_at(const ParamPoint& q) const;
  VarietyDescriptor variety_at(const ParamPoint& q) const;

  // F_I^{q} nonempty / nonempty with strict complement.
  bool in_Omega(const std::vector<int>& I, const ParamPoint& q) const;
  bool in_omega(const std::vector<int>& I, const ParamPoint& q) const;
  // exists (delta,eps) with q in omega_I (global nonemptiness of omega_I)
  bool omega_nonempty(const std::vector<int>& I) const;

  // Relation for an index set whose image has codimension 1; normalized.
  Relation relation_for(const std::vector<int>& I) const;
};

// Carrier D_I^{-1}(Im A_I) of an index set.
struct CarrierEmpty {};
struct CarrierPlane {};
using Carrier = std::variant<CarrierEmpty, ParamLine, ParamPoint, CarrierPlane>;

struct CarrierResult {
  Carrier carrier;
  std::vector<Relation> relations;  // 1 for codim 1, 2 for codim 2
};

// errors: A_I surjective.
CarrierResult carrier_line(const TwoParamFamily& f, const std::vector<int>& I);

struct Region {
  std::vector<int> I;           // 0-based
  LinSystem omega_big;          // H-form of Omega_I over (delta, eps)
  int omega_dim = -1;           // -1 empty, else dim of omega_I
  CarrierResult carrier;
};

Region region(const TwoParamFamily& f, const std::vector<int>& I);

enum class PointClassKind { Outside, U2, U1, U0, U0prime };

struct PointClass {
  PointClassKind kind = PointClassKind::Outside;
  std::vector<int> minimal;  // U1: minimal I; U0: minimal L (0-based)
};

PointClass classify_point(const TwoParamFamily& f, const ParamPoint& q);

// Half the distance (in ray parameter) from q to the first carrier line
// crossed by q + t*w; the open segment up to it meets no stratum beyond
// those through q itself.
Rat safe_step(const TwoParamFamily& f, const ParamPoint& q, const RatVec& w);

struct GenericityReport {
  bool pass = true;
  std::vector<std::string> violations;
};

GenericityReport check_genericity(const TwoParamFamily& f);

struct Strip {
  Rat dmin, dmax, emin, emax;
};

Strip default_strip(const TwoParamFamily& f);

using Polygon = std::vector<ParamPoint>;  // convex, CCW

Rat polygon_area2(const Polygon& poly);  // twice the signed area
ParamPoint polygon_centroid(const Polygon& poly);
Polygon clip_polygon(const Polygon& poly, const RatVec& normal, const Rat& rhs);

struct Cell {
  std::vector<Polygon> parts;  // convex pieces of one connected region of U2
  ParamPoint sample;
  VarietyDescriptor label;
};

enum class WallKind { Fibration, Divisorial, Flip, Isomorphism };

struct WallPiece {
  ParamPoint from, to;       // ordered along the line direction
  std::vector<int> min_circuit;  // 0-based minimal circuit
  Relation rel;
  bool on_boundary = false;  // piece of the MPC
};

struct DecompPoint {
  ParamPoint q;
  PointClass cls;
};

struct Decomposition {
  Strip strip;
  std::vector<Cell> cells;
  std::vector<WallPiece> walls;
  std::vector<DecompPoint> points;  // U0 / U0' points
};

// errors: genericity failure.
Decomposition decompose(const TwoParamFamily& f, const Strip& strip);

}  // namespace horosark
