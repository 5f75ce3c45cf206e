#include "horosark/fixture.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace horosark {

using json = nlohmann::ordered_json;

namespace {

Rat jrat(const json& j, const std::string& what) {
  if (j.is_number_integer()) return Rat((long)j.get<long long>());
  if (j.is_string()) return Rat::parse(j.get<std::string>());
  throw validation_error("expected a rational string for " + what);
}

RatVec jratvec(const json& j, const std::string& what) {
  if (!j.is_array()) throw validation_error(what + " must be an array");
  RatVec v;
  for (const auto& e : j) v.push_back(jrat(e, what));
  return v;
}

}  // namespace

FixtureFile parse_fixture(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw validation_error(std::string("fixture is not valid JSON: ") + e.what());
  }
  FixtureFile fx;
  if (!j.contains("format") || !j["format"].is_number_integer() || j["format"] != 1)
    throw validation_error("fixture must declare format: 1");
  fx.name = j.value("name", "");
  if (!j.contains("lattice_rank") || !j.contains("rows") || !j.contains("B") || !j.contains("Bprime"))
    throw validation_error("fixture needs lattice_rank, rows, B and Bprime");
  fx.emb.lattice_rank = j["lattice_rank"].get<int>();
  for (const auto& jr : j["rows"]) {
    EmbRow row;
    row.id = jr.at("id").get<int>();
    std::string kind = jr.at("kind").get<std::string>();
    if (kind == "ray") row.kind = RowKind::Ray;
    else if (kind == "color") row.kind = RowKind::Color;
    else throw validation_error("row kind must be \"ray\" or \"color\"");
    for (const auto& c : jr.at("vector")) {
      if (!c.is_number_integer()) throw validation_error("row vectors must be integer");
      row.vector.push_back(mpz_class((long)c.get<long long>()));
    }
    row.acoeff = jrat(jr.at("anticanonical_coeff"), "anticanonical_coeff");
    fx.emb.rows.push_back(std::move(row));
  }
  fx.B = jratvec(j["B"], "B");
  fx.Bprime = jratvec(j["Bprime"], "Bprime");
  if (j.contains("strip")) {
    Strip s;
    s.dmin = jrat(j["strip"].at("dmin"), "strip.dmin");
    s.dmax = jrat(j["strip"].at("dmax"), "strip.dmax");
    s.emin = jrat(j["strip"].at("emin"), "strip.emin");
    s.emax = jrat(j["strip"].at("emax"), "strip.emax");
    fx.strip = s;
  }
  if (j.contains("labels")) {
    for (const auto& jl : j["labels"]) {
      FixtureLabel l;
      l.name = jl.at("name").get<std::string>();
      l.at.delta = jrat(jl.at("delta"), "label delta");
      l.at.eps = jrat(jl.at("epsilon"), "label epsilon");
      fx.labels.push_back(std::move(l));
    }
  }
  fx.emb.validate();
  if ((int)fx.B.size() != fx.emb.p() || (int)fx.Bprime.size() != fx.emb.p())
    throw validation_error("B / Bprime length must equal the row count");
  return fx;
}

std::string serialize_fixture(const FixtureFile& fx) {
  json j;
  j["format"] = 1;
  if (!fx.name.empty()) j["name"] = fx.name;
  j["lattice_rank"] = fx.emb.lattice_rank;
  j["rows"] = json::array();
  for (const auto& row : fx.emb.rows) {
    json jr;
    jr["id"] = row.id;
    jr["kind"] = row.kind == RowKind::Ray ? "ray" : "color";
    jr["vector"] = json::array();
    for (const auto& c : row.vector) jr["vector"].push_back((long long)c.get_si());
    jr["anticanonical_coeff"] = row.acoeff.str();
    j["rows"].push_back(std::move(jr));
  }
  j["B"] = json::array();
  for (const auto& x : fx.B) j["B"].push_back(x.str());
  j["Bprime"] = json::array();
  for (const auto& x : fx.Bprime) j["Bprime"].push_back(x.str());
  if (fx.strip) {
    j["strip"] = {{"dmin", fx.strip->dmin.str()},
                  {"dmax", fx.strip->dmax.str()},
                  {"emin", fx.strip->emin.str()},
                  {"emax", fx.strip->emax.str()}};
  }
  if (!fx.labels.empty()) {
    j["labels"] = json::array();
    for (const auto& l : fx.labels)
      j["labels"].push_back(
          {{"name", l.name}, {"delta", l.at.delta.str()}, {"epsilon", l.at.eps.str()}});
  }
  return j.dump(2) + "\n";
}

FixtureFile load_fixture_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open fixture file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_fixture(ss.str());
}

TwoParamFamily family_of(const FixtureFile& fx) {
  return TwoParamFamily::make(fx.emb, fx.B, fx.Bprime);
}

}  // namespace horosark
