#pragma once

#include <string>

#include "horosark/fixture.hpp"
#include "horosark/sarkisov.hpp"

namespace horosark {

// Stable naming for varieties in reports: fixture labels matched by
// descriptor; unlabeled descriptors get V1, V2, ... in first-use order.
class VarietyNamer {
 public:
  VarietyNamer(const TwoParamFamily& f, const std::vector<FixtureLabel>& labels);
  std::string name(const VarietyDescriptor& v);

 private:
  std::vector<std::pair<VarietyDescriptor, std::string>> names_;
  int counter_ = 0;
};

// Wall classification with automatically sampled side chambers.
WallClassification classify_wall_sampled(const TwoParamFamily& f, const ParamPoint& q,
                                         const std::vector<int>& min_I, const Relation& rel);

std::string report_check(const FixtureFile& fx, const TwoParamFamily& f, bool as_json);
std::string report_classify(const TwoParamFamily& f, const ParamPoint& q, bool as_json);
std::string report_decompose(const FixtureFile& fx, const TwoParamFamily& f,
                             const Decomposition& dec, bool as_json);
std::string report_mmp(const FixtureFile& fx, const TwoParamFamily& f, const HmmpRun& run,
                       bool as_json);
std::string report_sarkisov(const FixtureFile& fx, const TwoParamFamily& f,
                            const SarkisovProgram& prog, bool as_json);

// Row-id rendering of a 0-based index set, e.g. {1,3,4,5}.
std::string row_ids(const TwoParamFamily& f, const std::vector<int>& rows);

std::string wall_kind_name(WallKind k);

}  // namespace horosark
