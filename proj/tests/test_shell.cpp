#include <doctest.h>

#include <fstream>
#include <sstream>

#include "horosark/cli.hpp"
#include "horosark/report.hpp"
#include "horosark/svg.hpp"
#include "test_support.hpp"

using namespace horosark;

namespace {

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
  std::ostringstream out, err;
  int code = cli_main(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

std::string fixture_path(const std::string& name) {
  return horosark::test::fixture_dir() + "/" + name + ".json";
}

size_t count_occurrences(const std::string& hay, const std::string& needle) {
  size_t n = 0, pos = 0;
  while ((pos = hay.find(needle, pos)) != std::string::npos) {
    ++n;
    pos += needle.size();
  }
  return n;
}

}  // namespace

TEST_CASE("fixture parse/serialize round trip") {
  for (const char* name : {"toric-f2", "toric-f2-alt", "horo-rank1"}) {
    FixtureFile fx = horosark::test::load(name);
    std::string text = serialize_fixture(fx);
    FixtureFile fx2 = parse_fixture(text);
    CHECK(serialize_fixture(fx2) == text);
    CHECK(fx2.name == fx.name);
    CHECK(fx2.B == fx.B);
    CHECK(fx2.Bprime == fx.Bprime);
    CHECK(fx2.emb.rows.size() == fx.emb.rows.size());
  }
}

TEST_CASE("fixture validation failures") {
  CHECK_THROWS_AS(parse_fixture("{"), validation_error);
  CHECK_THROWS_AS(parse_fixture("{\"format\": 2}"), validation_error);
  // non-primitive ray
  std::string bad = R"({"format":1,"lattice_rank":1,
    "rows":[{"id":1,"kind":"ray","vector":[2],"anticanonical_coeff":"1"},
            {"id":2,"kind":"ray","vector":[-1],"anticanonical_coeff":"1"}],
    "B":["0","0"],"Bprime":["1","1"]})";
  CHECK_THROWS_AS(parse_fixture(bad), validation_error);
  // color coefficient below 2
  std::string badc = R"({"format":1,"lattice_rank":1,
    "rows":[{"id":1,"kind":"color","vector":[1],"anticanonical_coeff":"1"},
            {"id":2,"kind":"ray","vector":[-1],"anticanonical_coeff":"1"}],
    "B":["0","0"],"Bprime":["1","1"]})";
  CHECK_THROWS_AS(parse_fixture(badc), validation_error);
}

TEST_CASE("cli exit codes") {
  std::string out, err;
  CHECK(run_cli({"classify", fixture_path("toric-f2"), "--delta", "1/2", "--epsilon", "0"}, &out) ==
        0);
  CHECK(out == "U0prime\n");

  CHECK(run_cli({"classify", "no-such-file.json", "--delta", "0", "--epsilon", "0"}, &out, &err) ==
        2);
  CHECK(run_cli({"frobnicate"}, &out, &err) == 2);

  // unbounded matrix: validation failure
  std::string path = "/tmp/horosark-unbounded.json";
  {
    std::ofstream f(path);
    f << R"({"format":1,"lattice_rank":1,
      "rows":[{"id":1,"kind":"ray","vector":[1],"anticanonical_coeff":"1"}],
      "B":["0"],"Bprime":["1"]})";
  }
  CHECK(run_cli({"check", path}, &out, &err) == 2);

  // genericity failure: B' = B
  std::string gpath = "/tmp/horosark-degenerate.json";
  {
    FixtureFile fx = horosark::test::load("toric-f2");
    fx.Bprime = fx.B;
    std::ofstream f(gpath);
    f << serialize_fixture(fx);
  }
  CHECK(run_cli({"check", gpath}, &out, &err) == 3);
  CHECK(run_cli({"sarkisov", gpath}, &out, &err) == 3);
}

TEST_CASE("reports are byte stable across runs") {
  for (const std::vector<std::string> args :
       {std::vector<std::string>{"--json", "sarkisov", fixture_path("toric-f2")},
        {"--json", "decompose", fixture_path("horo-rank1")},
        {"--json", "mmp", fixture_path("toric-f2"), "--delta", "2/5"},
        {"check", fixture_path("toric-f2-alt")}}) {
    std::string out1, out2;
    CHECK(run_cli(args, &out1) == 0);
    CHECK(run_cli(args, &out2) == 0);
    CHECK(out1 == out2);
    CHECK_FALSE(out1.empty());
  }
}

TEST_CASE("svg agrees with the decomposition report") {
  for (const char* name : {"toric-f2", "horo-rank1"}) {
    FixtureFile fx = horosark::test::load(name);
    TwoParamFamily f = family_of(fx);
    Decomposition dec = decompose(f, fx.strip ? *fx.strip : default_strip(f));
    std::string svg = emit_svg(fx, f, dec);
    CHECK(count_occurrences(svg, "class=\"wall ") == dec.walls.size());
    size_t anchors = 0, u0p = 0;
    for (const auto& p : dec.points) {
      if (p.cls.kind == PointClassKind::U0) ++anchors;
      if (p.cls.kind == PointClassKind::U0prime) ++u0p;
    }
    CHECK(count_occurrences(svg, "class=\"anchor\"") == anchors);
    CHECK(count_occurrences(svg, "class=\"point-u0p\"") == u0p);
    CHECK(count_occurrences(svg, "class=\"cell-label\"") == dec.cells.size());
    // wall colors by classification
    size_t fib = 0, div = 0, flip = 0, iso = 0;
    for (const auto& w : dec.walls) {
      ParamPoint mid{(w.from.delta + w.to.delta) / Rat(2), (w.from.eps + w.to.eps) / Rat(2)};
      switch (classify_wall_sampled(f, mid, w.min_circuit, w.rel).kind) {
        case WallKind::Fibration: ++fib; break;
        case WallKind::Divisorial: ++div; break;
        case WallKind::Flip: ++flip; break;
        case WallKind::Isomorphism: ++iso; break;
      }
    }
    CHECK(count_occurrences(svg, "wall fib") == fib);
    CHECK(count_occurrences(svg, "wall div") == div);
    CHECK(count_occurrences(svg, "wall flip") == flip);
    CHECK(count_occurrences(svg, "wall iso") == iso);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
  }
}

TEST_CASE("svg of an empty strip still renders") {
  FixtureFile fx = horosark::test::load("toric-f2");
  TwoParamFamily f = family_of(fx);
  Strip below{Rat(0), Rat(1), Rat(-9), Rat(-8)};
  Decomposition dec = decompose(f, below);
  std::string svg = emit_svg(fx, f, dec);
  CHECK(svg.find("<svg") == 0);
  CHECK(count_occurrences(svg, "class=\"wall ") == 0);
}

TEST_CASE("labels name the varieties in reports") {
  FixtureFile fx = horosark::test::load("horo-rank1");
  TwoParamFamily f = family_of(fx);
  std::string out;
  CHECK(run_cli({"sarkisov", fixture_path("horo-rank1")}, &out) == 0);
  CHECK(out.find("X1/G_P1") != std::string::npos);
  CHECK(out.find("X23/Y23") != std::string::npos);
  CHECK(out.find("IV_m") != std::string::npos);
  CHECK(out.find("III") != std::string::npos);
  CHECK(out.find("IV_s") != std::string::npos);
}
