// Acceptance suite: runs every acceptance criterion and prints one PASS/FAIL
// line per criterion. All comparisons are exact rational equalities.

#include <functional>
#include <iostream>
#include <sstream>

#include "horosark/cli.hpp"
#include "horosark/report.hpp"
#include "horosark/svg.hpp"
#include "test_support.hpp"

using namespace horosark;

namespace {

int g_failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " " << name << ": " << detail << "\n";
  if (!ok) ++g_failures;
}

void run(const std::string& name, const std::function<std::string()>& body) {
  try {
    std::string detail = body();
    report(name, true, detail);
  } catch (const std::exception& e) {
    report(name, false, e.what());
  }
}

struct failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw failure(what);
}

// ----- hand-built expected descriptors (independent of the family path) ----

VarietyDescriptor make_desc(const EmbeddingData& e, ZMat sublattice_rows,
                            std::vector<int> colors, std::vector<int> walls,
                            std::vector<ColoredCone> cones) {
  VarietyDescriptor v;
  v.ambient_rank = e.lattice_rank;
  v.sublattice = LatticeBasis::from_rows(e.lattice_rank, std::move(sublattice_rows));
  v.dim = v.sublattice.rank();
  v.colors = std::move(colors);
  v.wall_contacts = std::move(walls);
  for (int cid : v.colors) {
    const EmbRow& row = e.rows[cid - 1];
    ZVec red(v.dim, 0);
    for (int k = 0; k < v.dim; ++k)
      for (int c = 0; c < e.lattice_rank; ++c) red[k] += row.vector[c] * v.sublattice.basis[k][c];
    v.color_vectors.push_back({cid, red});
  }
  for (auto& c : cones) {
    std::sort(c.gens.begin(), c.gens.end());
    std::sort(c.colors.begin(), c.colors.end());
  }
  std::sort(cones.begin(), cones.end());
  v.cones = std::move(cones);
  return v;
}

ColoredCone cone2(ZVec a, ZVec b) { return ColoredCone{{std::move(a), std::move(b)}, {}}; }

}  // namespace

int main() {
  FixtureFile fx1 = horosark::test::load("toric-f2");
  FixtureFile fx2 = horosark::test::load("toric-f2-alt");
  FixtureFile fxh = horosark::test::load("horo-rank1");
  TwoParamFamily f1 = family_of(fx1);
  TwoParamFamily f2 = family_of(fx2);
  TwoParamFamily fh = family_of(fxh);

  VarietyDescriptor p1p1 = make_desc(
      f1.emb, {{1, 0}, {0, 1}}, {}, {},
      {cone2({1, 0}, {0, 1}), cone2({0, 1}, {-1, 0}), cone2({-1, 0}, {0, -1}),
       cone2({0, -1}, {1, 0})});
  VarietyDescriptor f1_surf = make_desc(
      f1.emb, {{1, 0}, {0, 1}}, {}, {},
      {cone2({1, 0}, {0, 1}), cone2({0, 1}, {-1, 0}), cone2({-1, 0}, {1, -1}),
       cone2({1, -1}, {1, 0})});
  VarietyDescriptor f2_surf = make_desc(
      f1.emb, {{1, 0}, {0, 1}}, {}, {},
      {cone2({1, 0}, {0, 1}), cone2({0, 1}, {-1, 0}), cone2({-1, 0}, {2, -1}),
       cone2({2, -1}, {1, 0})});
  VarietyDescriptor p1_base =
      make_desc(f1.emb, {{0, 1}}, {}, {}, {ColoredCone{{{1}}, {}}, ColoredCone{{{-1}}, {}}});

  run("criterion 1 (toric-f2 program)", [&] {
    SarkisovProgram prog = run_sarkisov(f1, &p1p1, &p1_base, &f2_surf, &p1_base);
    require(prog.links.size() == 2, "expected exactly 2 links");
    require(prog.links[0].anchor.q == ParamPoint{Rat(1, 3), Rat(1, 2)}, "anchor 1 at (1/3,1/2)");
    require(prog.links[1].anchor.q == ParamPoint{Rat(2, 3), Rat(1, 2)}, "anchor 2 at (2/3,1/2)");
    require(prog.links[0].anchor.L == std::vector<int>{0, 2, 3, 4}, "L1 = {1,3,4,5}");
    require(prog.links[1].anchor.L == std::vector<int>{0, 2, 4, 5}, "L2 = {1,3,5,6}");
    require(prog.links[0].type == LinkType::II && prog.links[1].type == LinkType::II,
            "both links type II");
    require(prog.X == p1p1, "X = P1 x P1 (hand-built fan)");
    require(prog.links[0].sectors.back() == f1_surf, "intermediate MFS top = F1");
    require(prog.Y == f2_surf, "Y = F2 (hand-built fan)");
    require(prog.S == p1_base && prog.T == p1_base, "both bases = P1 (hand-built fan)");
    require(prog.links[0].T0 == p1_base && prog.links[0].T1 == p1_base &&
                prog.links[1].T1 == p1_base,
            "fibration bases along the chain = P1");
    std::ostringstream out, err;
    int code = cli_main({"--json", "sarkisov", horosark::test::fixture_dir() + "/toric-f2.json"},
                        out, err);
    require(code == 0, "sarkisov CLI exited with " + std::to_string(code));
    size_t t1 = out.str().find("\"type\": \"II\"");
    require(t1 != std::string::npos &&
                out.str().find("\"type\": \"II\"", t1 + 1) != std::string::npos,
            "CLI report lists two type II links");
    return std::string("2 links II/II, chain P1xP1/P1 -> F1/P1 -> F2/P1, anchors and L-sets exact");
  });

  run("criterion 2 (U0' via the CLI)", [&] {
    std::ostringstream out, err;
    int code = cli_main({"classify", horosark::test::fixture_dir() + "/toric-f2.json", "--delta",
                         "1/2", "--epsilon", "0"},
                        out, err);
    require(code == 0, "classify exited with " + std::to_string(code));
    require(out.str() == "U0prime\n", "expected U0prime, got: " + out.str());
    return std::string("classify --delta 1/2 --epsilon 0 prints U0prime");
  });

  run("criterion 3 (second toric fixture)", [&] {
    SarkisovProgram prog = run_sarkisov(f2);
    require(prog.chain.anchors.size() == 3, "expected 3 anchors on the MPC");
    require(prog.links[0].type == LinkType::IVm, "first link type IV");
    require(prog.links[0].sectors.size() == 1, "type IV link has one top variety");
    require(prog.links[0].sectors[0] == p1p1, "the top variety is P1 x P1");
    require(!(prog.links[0].T0 == prog.links[0].T1), "the two projection bases differ");
    require(prog.links[0].T0 == prog.S, "left base is the X/S fibration");
    return std::string("first link IV between the two projections of P1 x P1; 3 anchors");
  });

  run("criterion 4 (horo-rank1 program)", [&] {
    SarkisovProgram prog = run_sarkisov(fh);
    require(prog.links.size() == 4, "expected exactly 4 links");
    std::vector<LinkType> types;
    for (const auto& l : prog.links) types.push_back(l.type);
    require(types == std::vector<LinkType>{LinkType::IVm, LinkType::III, LinkType::IVm,
                                           LinkType::IVs},
            "types IV_m, III, IV_m, IV_s in delta order");
    std::vector<ParamPoint> anchors = {{Rat(1, 16), Rat(13, 16)},
                                       {Rat(5, 12), Rat(7, 6)},
                                       {Rat(2, 3), Rat(7, 6)},
                                       {Rat(7, 8), Rat(3, 4)}};
    for (int i = 0; i < 4; ++i)
      require(prog.links[i].anchor.q == anchors[i], "anchor " + std::to_string(i + 1));
    require(prog.chain.pieces.size() == 5, "five chain pieces");
    require(prog.chain.pieces[0].I == std::vector<int>{0, 6} &&
                prog.chain.pieces[1].I == std::vector<int>{1, 6} &&
                prog.chain.pieces[2].I == std::vector<int>{1, 3} &&
                prog.chain.pieces[3].I == std::vector<int>{4} &&
                prog.chain.pieces[4].I == std::vector<int>{4},
            "segments omega_{1,7}, omega_{2,7}, omega_{2,4}, omega_{5}");
    VarietyDescriptor gp1 = make_desc(fh.emb, {}, {2, 3, 4, 5}, {1}, {});
    VarietyDescriptor gp2 = make_desc(fh.emb, {}, {1, 3, 4, 5}, {2}, {});
    VarietyDescriptor gp24 = make_desc(fh.emb, {}, {1, 3, 5}, {2, 4}, {});
    VarietyDescriptor y24 = make_desc(fh.emb, {{1}}, {1, 2, 3, 4}, {5},
                                      {ColoredCone{{{1}}, {2}}, ColoredCone{{{-1}}, {4}}});
    VarietyDescriptor y23 = make_desc(fh.emb, {{1}}, {1, 2, 3, 4}, {5},
                                      {ColoredCone{{{1}}, {2}}, ColoredCone{{{-1}}, {3}}});
    require(prog.chain.pieces[0].target == gp1, "first target G/P_1");
    require(prog.chain.pieces[1].target == gp2, "second target G/P_2");
    require(prog.chain.pieces[2].target == gp24, "third target G/P_{2,4}");
    require(prog.chain.pieces[3].target == y24 && prog.chain.pieces[4].target == y23,
            "rank-one images on omega_5");
    std::ostringstream out, err;
    int code = cli_main({"sarkisov", horosark::test::fixture_dir() + "/horo-rank1.json"}, out, err);
    require(code == 0, "sarkisov CLI exited with " + std::to_string(code));
    for (const char* needle : {"link IV_m", "link III", "link IV_s"})
      require(out.str().find(needle) != std::string::npos,
              std::string("CLI report lists ") + needle);
    return std::string("4 links IV_m/III/IV_m/IV_s; anchors and fibration targets exact");
  });

  run("criterion 5 (MMP endpoints)", [&] {
    HmmpRun r0 = run_hmmp(f1, Rat(0));
    require(r0.events.size() == 1 && r0.eps_max == Rat(1, 2), "delta 0: one event at eps = 1/2");
    require(r0.events[0].wall.kind == WallKind::Fibration, "delta 0: fibration");
    require(r0.terminal == p1_base, "delta 0: target P1");
    HmmpRun r1 = run_hmmp(f1, Rat(1));
    require(r1.events.back().source == f2_surf, "delta 1: penultimate F2");
    require(r1.terminal == p1_base, "delta 1: target P1");
    require(verify_scaling(f1, p1p1, p1_base, Rat(0)).ok, "verify_scaling at delta 0");
    require(verify_scaling(f1, f2_surf, p1_base, Rat(1)).ok, "verify_scaling at delta 1");
    return std::string("delta 0 ends P1xP1 -> P1 at eps = 1/2; delta 1 ends F2 -> P1; scaling ok");
  });

  // --- criterion 6: property suites -----------------------------------

  run("criterion 6a (region/oracle equivalence)", [&] {
    horosark::test::Rng rng(987654);
    long cases = 0;
    for (TwoParamFamily* f : {&f1, &fh}) {
      std::vector<std::vector<int>> sets = {{}};
      for (const auto& c : f->circs) sets.push_back(c);
      std::vector<Region> regs;
      for (const auto& I : sets) regs.push_back(region(*f, I));
      for (int iter = 0; iter < 2100 / (int)sets.size(); ++iter) {
        ParamPoint q{rng.rat(-1, 2, 6), rng.rat(-2, 3, 6)};
        for (size_t s = 0; s < sets.size(); ++s) {
          bool proj = true;
          if (regs[s].omega_big.infeasible) proj = false;
          for (const auto& row : regs[s].omega_big.rows) {
            if (!proj) break;
            Rat v = row.a[0] * q.delta + row.a[1] * q.eps;
            if (row.op == RelOp::Eq && v != row.rhs) proj = false;
            if (row.op == RelOp::Ge && v < row.rhs) proj = false;
            if (row.op == RelOp::Gt && !(v > row.rhs)) proj = false;
          }
          require(proj == f->in_Omega(sets[s], q), "projection vs LP disagree");
          ++cases;
        }
      }
    }
    require(cases >= 1000, "not enough cases");
    return std::to_string(cases) + " membership queries agree (projection vs direct LP)";
  });

  run("criterion 6b (convexity, closure, monotonicity, strict hull)", [&] {
    horosark::test::Rng rng(13579);
    long cases = 0;
    // convexity + strict hull on random point pairs
    for (TwoParamFamily* f : {&f1, &fh}) {
      for (int iter = 0; iter < 260; ++iter) {
        ParamPoint q1{rng.rat(-1, 2, 8), rng.rat(-2, 2, 8)};
        ParamPoint q2{rng.rat(-1, 2, 8), rng.rat(-2, 2, 8)};
        ParamPoint mid{(q1.delta + q2.delta) / Rat(2), (q1.eps + q2.eps) / Rat(2)};
        if (f->in_Omega({}, q1) && f->in_Omega({}, q2))
          require(f->in_Omega({}, mid), "Omega_empty is not convex");
        if (f->in_omega({}, q1) && f->in_omega({}, q2))
          require(f->in_omega({}, mid), "omega_empty is not convex");
        ++cases;
      }
      for (size_t i = 0; i < f->circs.size(); ++i)
        for (size_t j = i + 1; j < f->circs.size(); ++j) {
          std::vector<int> uni, inter;
          std::set_union(f->circs[i].begin(), f->circs[i].end(), f->circs[j].begin(),
                         f->circs[j].end(), std::back_inserter(uni));
          std::set_intersection(f->circs[i].begin(), f->circs[i].end(), f->circs[j].begin(),
                                f->circs[j].end(), std::back_inserter(inter));
          ParamPoint q{rng.rat(-1, 2, 6), rng.rat(-2, 2, 6)};
          if (f->in_Omega(uni, q)) {
            require(f->in_Omega(f->circs[i], q), "monotonicity failed");
            require(f->in_Omega(f->circs[j], q), "monotonicity failed");
            require(f->in_Omega(inter, q), "monotonicity failed");
          }
          cases += 3;
        }
    }
    // closure along the toric-f2 chain
    for (const ParamPoint& q : std::vector<ParamPoint>{{Rat(0), Rat(1, 2)},
                                                       {Rat(1, 3), Rat(1, 2)},
                                                       {Rat(2, 3), Rat(1, 2)},
                                                       {Rat(1), Rat(1, 2)}}) {
      require(f1.in_Omega({}, q) && !f1.in_omega({}, q), "chain points sit on the boundary");
      std::vector<int> big = f1.polytope_at(q).identically_tight();
      require(!big.empty() && f1.in_omega(big, q), "closure witness failed");
      ++cases;
    }
    require(cases >= 1000, "not enough cases");
    return std::to_string(cases) + " convexity/closure/monotonicity/strict-hull checks";
  });

  run("criterion 6c (genericity dimension bounds)", [&] {
    long cases = 0;
    horosark::test::Rng rng(777111);
    std::vector<TwoParamFamily> families = {f1, f2, fh};
    // randomized small polarizations on the toric matrix that pass `check`
    int made = 0;
    while (made < 12) {
      RatVec b(6), bp(6);
      for (int r = 0; r < 6; ++r) {
        b[r] = Rat(-rng.integer(0, 6), rng.integer(1, 2));
        bp[r] = Rat(-rng.integer(0, 6), rng.integer(1, 2));
      }
      TwoParamFamily cand = TwoParamFamily::make(fx1.emb, b, bp);
      if (!check_genericity(cand).pass) continue;
      families.push_back(cand);
      ++made;
    }
    for (const auto& f : families) {
      for (const auto& c : f.circs) {
        require(region(f, c).omega_dim <= 1, "codim-1 omega exceeds dimension 1");
        ++cases;
      }
      for (size_t i = 0; i < f.circs.size(); ++i)
        for (size_t j = i + 1; j < f.circs.size(); ++j) {
          std::vector<int> L;
          std::set_union(f.circs[i].begin(), f.circs[i].end(), f.circs[j].begin(),
                         f.circs[j].end(), std::back_inserter(L));
          int codim = (int)L.size() - rank(f.A.select_rows(L));
          if (codim < 2) continue;
          int dim = region(f, L).omega_dim;
          require(dim <= (codim == 2 ? 0 : -1), "union omega exceeds the generic dimension");
          ++cases;
        }
    }
    require(cases >= 1000, "not enough cases");
    return std::to_string(cases) + " dimension bounds on " + std::to_string(families.size()) +
           " generic families";
  });

  run("criterion 6d (Picard bookkeeping)", [&] {
    long cases = 0;
    for (TwoParamFamily* f : {&f1, &f2, &fh}) {
      for (long num = 1; num < 499; ++num) {
        Rat delta(num, 499);
        HmmpRun run;
        try {
          run = run_hmmp(*f, delta);
        } catch (const validation_error&) {
          continue;
        }
        for (const auto& ev : run.events) {
          if (ev.wall.kind == WallKind::Flip) {
            require(picard_count(ev.source) == picard_count(ev.after), "flip changed rho");
            ++cases;
          } else if (ev.wall.kind == WallKind::Divisorial) {
            require(picard_count(ev.source) == picard_count(ev.after) + 1,
                    "divisorial did not drop rho by 1");
            ++cases;
          } else if (ev.wall.kind == WallKind::Fibration) {
            bool drop = ev.after.dim < ev.source.dim ||
                        ev.after.colors.size() < ev.source.colors.size();
            require(drop, "fibration target does not drop rank or colors");
            ++cases;
          }
        }
      }
      SarkisovProgram prog = run_sarkisov(*f);
      for (const auto& link : prog.links)
        for (const auto& s : link.sectors) {
          int rel = picard_count(s) - picard_count(link.R);
          require(rel <= 2, "relative Picard number above 2 at an anchor");
          ++cases;
        }
    }
    require(cases >= 1000, "not enough cases");
    return std::to_string(cases) + " flip/divisorial/fibration/anchor Picard checks";
  });

  run("criterion 6e (slope formula and rotated monotonicity)", [&] {
    long cases = 0;
    horosark::test::Rng rng(246810);
    std::vector<TwoParamFamily> families = {f1, f2, fh};
    // randomized perturbations of the fixture polarizations with valid chains
    int attempts = 0;
    while ((int)families.size() < 120 && attempts < 900) {
      ++attempts;
      const FixtureFile& base = (attempts % 3 == 0) ? fxh : (attempts % 3 == 1) ? fx1 : fx2;
      RatVec b = base.B, bp = base.Bprime;
      for (auto& x : b) x += Rat(rng.integer(-2, 2), 8);
      for (auto& x : bp) x += Rat(rng.integer(-2, 2), 8);
      try {
        TwoParamFamily cand = TwoParamFamily::make(base.emb, b, bp);
        mori_chain(cand);
        families.push_back(std::move(cand));
      } catch (const std::exception&) {
        continue;
      }
    }
    for (TwoParamFamily& fam : families) {
      TwoParamFamily* f = &fam;
      MoriChain chain = mori_chain(*f);
      for (int i = 0; i < (int)chain.anchors.size(); ++i) {
        RayPartition rp = ray_partition(*f, chain, i);
        for (const auto& cls : rp.classes) {
          Relation r = f->relation_for(cls.complement);
          if (r.sum_c.is_zero()) {
            require(cls.slope_inf, "slope formula misses a vertical carrier");
          } else {
            require(!cls.slope_inf && cls.slope == r.sum_bpp / r.sum_c,
                    "slope formula differs from the carrier line");
          }
          ++cases;
        }
        // rotated slopes strictly decrease
        bool have_prev = false;
        Rat prev;
        for (size_t s = 1; s < rp.classes.size(); ++s) {
          Rat rel;
          if (rp.classes[s].slope_inf) rel = -rp.a;
          else rel = (rp.a * rp.classes[s].slope + Rat(1)) / (rp.a - rp.classes[s].slope);
          if (have_prev) require(prev > rel, "rotated slopes do not decrease");
          prev = rel;
          have_prev = true;
          ++cases;
        }
      }
    }
    require(cases >= 1000, "not enough cases");
    return std::to_string(cases) + " slope checks across " + std::to_string(families.size()) +
           " families (all fixture anchors included)";
  });

  run("criterion 7 (plot smoke test)", [&] {
    std::string detail;
    for (const FixtureFile* fx : {&fx1, &fx2, &fxh}) {
      TwoParamFamily f = family_of(*fx);
      Decomposition dec = decompose(f, fx->strip ? *fx->strip : default_strip(f));
      std::string svg = emit_svg(*fx, f, dec);
      auto count = [&](const std::string& needle) {
        size_t n = 0, pos = 0;
        while ((pos = svg.find(needle, pos)) != std::string::npos) {
          ++n;
          pos += needle.size();
        }
        return n;
      };
      require(count("class=\"wall ") == dec.walls.size(), "wall count mismatch");
      size_t fib = 0, div = 0, flip = 0, iso = 0, anchors = 0, u0p = 0;
      for (const auto& w : dec.walls) {
        ParamPoint mid{(w.from.delta + w.to.delta) / Rat(2), (w.from.eps + w.to.eps) / Rat(2)};
        switch (classify_wall_sampled(f, mid, w.min_circuit, w.rel).kind) {
          case WallKind::Fibration: ++fib; break;
          case WallKind::Divisorial: ++div; break;
          case WallKind::Flip: ++flip; break;
          case WallKind::Isomorphism: ++iso; break;
        }
      }
      for (const auto& p : dec.points) {
        if (p.cls.kind == PointClassKind::U0) ++anchors;
        else ++u0p;
      }
      require(count("wall fib") == fib && count("wall div") == div &&
                  count("wall flip") == flip && count("wall iso") == iso,
              "wall color classes mismatch");
      require(count("class=\"anchor\"") == anchors, "anchor count mismatch");
      require(count("class=\"point-u0p\"") == u0p, "U0' count mismatch");
      detail += fx->name + "(" + std::to_string(dec.walls.size()) + "w/" +
                std::to_string(anchors) + "a) ";
    }
    return "SVG counts match the reports: " + detail;
  });

  std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(g_failures))
            << "\n";
  return g_failures == 0 ? 0 : 1;
}
