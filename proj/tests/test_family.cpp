#include <doctest.h>

#include <algorithm>
#include <set>

#include "horosark/family.hpp"
#include "test_support.hpp"

using namespace horosark;
using horosark::test::Rng;

namespace {

// Omega_I membership via the projected H-form (the region route).
bool in_region(const Region& reg, const ParamPoint& q) {
  if (reg.omega_big.infeasible) return false;
  for (const auto& row : reg.omega_big.rows) {
    Rat v = row.a[0] * q.delta + row.a[1] * q.eps;
    if (row.op == RelOp::Eq && v != row.rhs) return false;
    if (row.op == RelOp::Ge && v < row.rhs) return false;
    if (row.op == RelOp::Gt && !(v > row.rhs)) return false;
  }
  return true;
}

// a deterministic point of omega_I when nonempty: strict-slack LP witness
std::optional<ParamPoint> omega_point(const TwoParamFamily& f, const std::vector<int>& I) {
  std::vector<bool> in_i(f.p(), false);
  for (int i : I) in_i[i] = true;
  int nv = f.n() + 3;
  LinearProgram lp;
  lp.nvars = nv;
  lp.c.assign(nv, Rat());
  lp.c[nv - 1] = Rat(1);
  for (int r = 0; r < f.p(); ++r) {
    RatVec a = f.A.row(r);
    a.resize(nv);
    a[f.n()] = -f.Bpp[r];
    a[f.n() + 1] = -f.C[r];
    if (in_i[r]) {
      lp.add_eq(a, f.B[r]);
    } else {
      a[nv - 1] = Rat(-1);
      lp.add_ge(a, f.B[r]);
    }
  }
  RatVec cap(nv);
  cap[nv - 1] = Rat(-1);
  lp.add_ge(cap, Rat(-1));
  // keep the witness inside a big box so the LP has an optimum
  for (int v : {f.n(), f.n() + 1}) {
    RatVec lo(nv), hi(nv);
    lo[v] = Rat(1);
    hi[v] = Rat(-1);
    lp.add_ge(lo, Rat(-100));
    lp.add_ge(hi, Rat(-100));
  }
  LpResult res = solve_lp(lp);
  if (res.status != LpStatus::Optimal || res.value.sign() <= 0) return std::nullopt;
  return ParamPoint{res.x[f.n()], res.x[f.n() + 1]};
}

}  // namespace

TEST_CASE("carrier_line frozen examples") {
  TwoParamFamily ft = horosark::test::family("toric-f2");
  // I = {1,4,5}: line eps = 3 delta - 1/2
  CarrierResult c1 = carrier_line(ft, {0, 3, 4});
  REQUIRE(std::holds_alternative<ParamLine>(c1.carrier));
  ParamLine l1 = std::get<ParamLine>(c1.carrier);
  CHECK(l1.a == Rat(1));
  CHECK(l1.b == Rat(-3));
  CHECK(l1.c == Rat(1, 2));
  REQUIRE(c1.relations.size() == 1);
  CHECK(c1.relations[0].lambda == RatVec{Rat(1), Rat(1), Rat(-1)});

  // I = {1,3}: constant line eps = 1/2, lambda = (1/2, 1/2)
  CarrierResult c2 = carrier_line(ft, {0, 2});
  ParamLine l2 = std::get<ParamLine>(c2.carrier);
  CHECK(l2.a == Rat(1));
  CHECK(l2.b == Rat(0));
  CHECK(l2.c == Rat(-1, 2));
  CHECK(c2.relations[0].lambda == RatVec{Rat(1, 2), Rat(1, 2)});

  // rank-one fixture, I = {2,4}: eps = 7/6
  TwoParamFamily fh = horosark::test::family("horo-rank1");
  CarrierResult c3 = carrier_line(fh, {1, 3});
  ParamLine l3 = std::get<ParamLine>(c3.carrier);
  CHECK(l3.a == Rat(1));
  CHECK(l3.b == Rat(0));
  CHECK(l3.c == Rat(-7, 6));
  CHECK(c3.relations[0].lambda == RatVec{Rat(1, 6), Rat(1, 6)});

  // surjective A_I has no carrier
  CHECK_THROWS_AS(carrier_line(ft, {0, 1}), validation_error);
}

TEST_CASE("region frozen examples") {
  TwoParamFamily ft = horosark::test::family("toric-f2");

  // I = {1,3,4,5}: the single point (1/3, 1/2)
  Region r1 = region(ft, {0, 2, 3, 4});
  CHECK(r1.omega_dim == 0);
  REQUIRE(std::holds_alternative<ParamPoint>(r1.carrier.carrier));
  ParamPoint q = std::get<ParamPoint>(r1.carrier.carrier);
  CHECK(q.delta == Rat(1, 3));
  CHECK(q.eps == Rat(1, 2));

  // I = {2,4}: carrier eps = 1 + 2 delta lies above Omega in the strip
  Region r2 = region(ft, {1, 3});
  ParamLine l2 = std::get<ParamLine>(r2.carrier.carrier);
  for (Rat d : {Rat(0), Rat(1, 2), Rat(1)}) {
    Rat e = -(l2.b * d + l2.c) / l2.a;
    CHECK(e == Rat(1) + Rat(2) * d);
    CHECK_FALSE(ft.in_omega({1, 3}, {d, e}));
  }

  // Omega_empty: projection vs direct LP on a grid
  Region r0 = region(ft, {});
  CHECK(r0.omega_dim == 2);
  for (long dd = 0; dd <= 4; ++dd)
    for (long ee = -4; ee <= 4; ++ee) {
      ParamPoint p{Rat(dd, 4), Rat(ee, 4)};
      CHECK(in_region(r0, p) == ft.in_Omega({}, p));
    }
}

TEST_CASE("classify_point frozen examples") {
  TwoParamFamily ft = horosark::test::family("toric-f2");
  CHECK(classify_point(ft, {Rat(1, 2), Rat(0)}).kind == PointClassKind::U0prime);
  CHECK(classify_point(ft, {Rat(0), Rat(0)}).kind == PointClassKind::U2);
  CHECK(classify_point(ft, {Rat(1), Rat(0)}).kind == PointClassKind::U2);
  PointClass pc = classify_point(ft, {Rat(1, 3), Rat(1, 2)});
  CHECK(pc.kind == PointClassKind::U0);
  CHECK(pc.minimal == std::vector<int>{0, 2, 3, 4});
  // U1 on the MPC segment and outside the polytope region
  CHECK(classify_point(ft, {Rat(1, 2), Rat(1, 2)}).kind == PointClassKind::U1);
  CHECK(classify_point(ft, {Rat(1, 2), Rat(5)}).kind == PointClassKind::Outside);
}

TEST_CASE("check_genericity: fixtures pass, degenerate polarizations fail") {
  for (const char* name : {"toric-f2", "toric-f2-alt", "horo-rank1"}) {
    TwoParamFamily f = horosark::test::family(name);
    GenericityReport rep = check_genericity(f);
    CHECK(rep.pass);
  }
  FixtureFile fx = horosark::test::load("toric-f2");
  TwoParamFamily same = TwoParamFamily::make(fx.emb, fx.B, fx.B);
  CHECK_FALSE(check_genericity(same).pass);

  RatVec bpc = fx.B;
  TwoParamFamily fx0 = horosark::test::family("toric-f2");
  for (int r = 0; r < (int)bpc.size(); ++r) bpc[r] = fx.B[r] + fx0.C[r];
  TwoParamFamily shift = TwoParamFamily::make(fx.emb, fx.B, bpc);
  CHECK_FALSE(check_genericity(shift).pass);
}

TEST_CASE("decompose frozen cell structure") {
  FixtureFile fx = horosark::test::load("toric-f2");
  TwoParamFamily ft = family_of(fx);
  Decomposition dec = decompose(ft, default_strip(ft));
  CHECK(dec.cells.size() == 6);
  // expected labels via independent hand-chosen divisors with the right fans
  std::vector<VarietyDescriptor> expected = {
      variety_from_divisor(ft.emb, {Rat(1), Rat(1), Rat(1), Rat(1), Rat(9), Rat(9)}),
      variety_from_divisor(ft.emb, {Rat(1), Rat(1), Rat(1), Rat(1), Rat(3, 2), Rat(9)}),
      variety_from_divisor(ft.emb, {Rat(1), Rat(1), Rat(1), Rat(9), Rat(2), Rat(9)}),
      variety_from_divisor(ft.emb, {Rat(1), Rat(1), Rat(1), Rat(4), Rat(2), Rat(9, 2)}),
      variety_from_divisor(ft.emb, {Rat(1), Rat(1), Rat(1), Rat(9), Rat(9), Rat(3)}),
      variety_from_divisor(ft.emb, {Rat(2), Rat(2), Rat(3), Rat(4), Rat(9, 2), Rat(6)})};
  for (const auto& exp : expected) {
    int hits = 0;
    for (const auto& c : dec.cells) hits += c.label == exp;
    CHECK(hits == 1);
  }
  CHECK(dec.points.size() == 3);

  // rank-one cells include X1, X2, X24, X23
  FixtureFile fh = horosark::test::load("horo-rank1");
  TwoParamFamily fhf = family_of(fh);
  Decomposition dech = decompose(fhf, default_strip(fhf));
  std::vector<ParamPoint> samples = {{Rat(0), Rat(0)},
                                     {Rat(1, 2), Rat(1, 2)},
                                     {Rat(2, 3), Rat(9, 10)},
                                     {Rat(1), Rat(0)}};
  for (const auto& s : samples) {
    VarietyDescriptor d = fhf.variety_at(s);
    int hits = 0;
    for (const auto& c : dech.cells) hits += c.label == d;
    CHECK(hits == 1);
  }

  // degenerate strip below all walls: a single cell labeled Z
  Strip low{Rat(0), Rat(1), Rat(-5), Rat(-4)};
  Decomposition decl = decompose(ft, low);
  CHECK(decl.cells.size() == 1);
  CHECK(decl.cells[0].label == expected[5]);
  CHECK(decl.walls.empty());
}

TEST_CASE("region/LP oracle equivalence at random points") {
  Rng rng(987654);
  int cases = 0;
  for (const char* name : {"toric-f2", "horo-rank1"}) {
    TwoParamFamily f = horosark::test::family(name);
    std::vector<std::vector<int>> sets = {{}};
    for (const auto& c : f.circs) sets.push_back(c);
    std::vector<Region> regs;
    for (const auto& I : sets) regs.push_back(region(f, I));
    for (int iter = 0; iter < 2050 / (int)sets.size(); ++iter) {
      ParamPoint q{rng.rat(-1, 2, 6), rng.rat(-2, 3, 6)};
      for (size_t s = 0; s < sets.size(); ++s) {
        CHECK(in_region(regs[s], q) == f.in_Omega(sets[s], q));
        ++cases;
      }
    }
  }
  CHECK(cases >= 1000);
}

TEST_CASE("convexity of Omega_I: midpoints stay inside") {
  Rng rng(192837);
  TwoParamFamily f = horosark::test::family("toric-f2");
  int cases = 0;
  while (cases < 1000) {
    ParamPoint q1{rng.rat(-1, 2, 8), rng.rat(-2, 2, 8)};
    ParamPoint q2{rng.rat(-1, 2, 8), rng.rat(-2, 2, 8)};
    for (const auto& I : {std::vector<int>{}, {0, 2}, {2, 3, 4}}) {
      if (f.in_Omega(I, q1) && f.in_Omega(I, q2)) {
        ParamPoint mid{(q1.delta + q2.delta) / Rat(2), (q1.eps + q2.eps) / Rat(2)};
        CHECK(f.in_Omega(I, mid));
      }
      ++cases;
    }
  }
}

TEST_CASE("closure: boundary points of Omega_I lie in some strictly larger omega") {
  TwoParamFamily f = horosark::test::family("toric-f2");
  std::vector<ParamPoint> boundary = {{Rat(0), Rat(1, 2)},
                                      {Rat(1, 3), Rat(1, 2)},
                                      {Rat(1, 2), Rat(1, 2)},
                                      {Rat(1), Rat(1, 2)}};
  for (const auto& q : boundary) {
    CHECK(f.in_Omega({}, q));
    CHECK_FALSE(f.in_omega({}, q));
    HPolytope p = f.polytope_at(q);
    std::vector<int> big = p.identically_tight();
    CHECK_FALSE(big.empty());
    CHECK(f.in_omega(big, q));
  }
}

TEST_CASE("monotonicity: J subset I implies Omega_I subset Omega_J") {
  TwoParamFamily f = horosark::test::family("toric-f2");
  Rng rng(5551212);
  int cases = 0;
  for (size_t i = 0; i < f.circs.size(); ++i)
    for (size_t j = i + 1; j < f.circs.size(); ++j) {
      std::vector<int> u;
      std::set_union(f.circs[i].begin(), f.circs[i].end(), f.circs[j].begin(), f.circs[j].end(),
                     std::back_inserter(u));
      std::vector<int> inter;
      std::set_intersection(f.circs[i].begin(), f.circs[i].end(), f.circs[j].begin(),
                            f.circs[j].end(), std::back_inserter(inter));
      for (int iter = 0; iter < 4; ++iter) {
        ParamPoint q{rng.rat(-1, 2, 6), rng.rat(-2, 2, 6)};
        bool in_u = f.in_Omega(u, q);
        for (const auto& sub : {f.circs[i], f.circs[j], inter}) {
          if (in_u) CHECK(f.in_Omega(sub, q));
          ++cases;
        }
      }
    }
  // unions against their parts
  std::vector<int> L = {0, 2, 3, 4};
  for (const auto& sub : {std::vector<int>{0, 2}, {0, 3, 4}, {2, 3, 4}}) {
    ParamPoint q{Rat(1, 3), Rat(1, 2)};
    CHECK(f.in_Omega(L, q));
    CHECK(f.in_Omega(sub, q));
    ++cases;
  }
  CHECK(cases >= 1000);
}

TEST_CASE("strict hull: convex combinations of omegas meet omega of the intersection") {
  Rng rng(864208);
  int cases = 0;
  for (const char* name : {"toric-f2", "horo-rank1"}) {
    TwoParamFamily f = horosark::test::family(name);
    std::vector<std::vector<int>> sets;
    for (const auto& c : f.circs) sets.push_back(c);
    sets.push_back({});
    for (size_t i = 0; i < sets.size() && cases < 1600; ++i)
      for (size_t j = i; j < sets.size() && cases < 1600; ++j) {
        auto p1 = omega_point(f, sets[i]);
        auto p2 = omega_point(f, sets[j]);
        if (!p1 || !p2) continue;
        std::vector<int> inter;
        std::set_intersection(sets[i].begin(), sets[i].end(), sets[j].begin(), sets[j].end(),
                              std::back_inserter(inter));
        for (long t = 1; t <= 15; ++t) {
          Rat tt(t, 16);
          ParamPoint mid{(Rat(1) - tt) * p1->delta + tt * p2->delta,
                         (Rat(1) - tt) * p1->eps + tt * p2->eps};
          CHECK(f.in_omega(inter, mid));
          ++cases;
        }
      }
  }
  CHECK(cases >= 1000);
}

TEST_CASE("generality dimension bounds on passing fixtures") {
  for (const char* name : {"toric-f2", "toric-f2-alt", "horo-rank1"}) {
    TwoParamFamily f = horosark::test::family(name);
    REQUIRE(check_genericity(f).pass);
    for (const auto& c : f.circs) {
      Region r = region(f, c);
      CHECK(r.omega_dim <= 1);
    }
    for (size_t i = 0; i < f.circs.size(); ++i)
      for (size_t j = i + 1; j < f.circs.size(); ++j) {
        std::vector<int> L;
        std::set_union(f.circs[i].begin(), f.circs[i].end(), f.circs[j].begin(),
                       f.circs[j].end(), std::back_inserter(L));
        int codim = (int)L.size() - rank(f.A.select_rows(L));
        if (codim < 2) continue;
        Region r = region(f, L);
        CHECK(r.omega_dim <= (codim == 2 ? 0 : -1));
      }
  }
}
