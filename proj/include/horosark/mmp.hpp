#pragma once

#include "horosark/family.hpp"

namespace horosark {

struct WallClassification {
  WallKind kind = WallKind::Flip;
  int contracted_row = -1;  // 0-based row, Divisorial only
  VarietyDescriptor target;  // variety at the wall point
  std::vector<int> min_I;    // minimal circuit (0-based)
  Relation rel;
};

// Classifies the wall through a U1 point on a one-dimensional omega_I.
// side_before / side_after: descriptors of the adjacent chambers, used to
// separate divisorial contractions from isomorphisms.
WallClassification classify_wall(const TwoParamFamily& f, const ParamPoint& q,
                                 const std::vector<int>& min_I,
                                 const VarietyDescriptor* side_before = nullptr,
                                 const VarietyDescriptor* side_after = nullptr);

struct HmmpEvent {
  Rat eps;
  WallClassification wall;
  VarietyDescriptor source;  // chamber below the wall
  VarietyDescriptor after;   // chamber above (flips/divisorial) or target (fibration)
};

struct HmmpRun {
  Rat delta;
  std::vector<HmmpEvent> events;  // strictly increasing eps; last is the fibration
  Rat eps_max;
  VarietyDescriptor terminal;  // fibration target
};

// Sweeps eps upward from eps_start at fixed delta, classifying every wall
// crossing; ends at the fibration onto the Mori polygonal chain.
HmmpRun run_hmmp(const TwoParamFamily& f, const Rat& delta, const Rat& eps_start = Rat(0));

struct ScalingCheck {
  bool ok = false;
  std::string diagnostic;
};

// Checks that the sweep at delta ends with expected_x -> expected_s and that
// every row absent from expected_x is strictly redundant at (delta, eps_start).
ScalingCheck verify_scaling(const TwoParamFamily& f, const VarietyDescriptor& expected_x,
                            const VarietyDescriptor& expected_s, const Rat& delta,
                            const Rat& eps_start = Rat(0));

}  // namespace horosark
