#pragma once

#include <optional>
#include <string>

#include "horosark/family.hpp"

namespace horosark {

struct FixtureLabel {
  std::string name;
  ParamPoint at;
};

// On-disk description of a two-parameter family (format 1). Rationals are
// "p/q" strings end to end.
struct FixtureFile {
  int format = 1;
  std::string name;
  EmbeddingData emb;
  RatVec B, Bprime;
  std::optional<Strip> strip;
  std::vector<FixtureLabel> labels;
};

FixtureFile parse_fixture(const std::string& json_text);
std::string serialize_fixture(const FixtureFile& fx);
FixtureFile load_fixture_file(const std::string& path);

TwoParamFamily family_of(const FixtureFile& fx);

}  // namespace horosark
