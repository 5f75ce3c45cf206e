#pragma once

#include "horosark/mmp.hpp"

namespace horosark {

struct ChainPiece {
  ParamPoint from, to;  // ordered by increasing delta
  std::vector<int> I;   // minimal circuit (0-based)
  Relation rel;
  VarietyDescriptor target;  // fibration target along this piece
};

struct ChainAnchor {
  ParamPoint q;
  std::vector<int> L;  // minimal singleton support (0-based)
  bool vertex = false;
};

// (Omega_empty \ omega_empty) within 0 <= delta <= 1: alternating fibration
// pieces and link anchors, ordered by delta.
struct MoriChain {
  std::vector<ChainPiece> pieces;
  std::vector<ChainAnchor> anchors;  // anchors[i] separates pieces[i], pieces[i+1]
};

MoriChain mori_chain(const TwoParamFamily& f);

struct NuClass {
  std::vector<int> members;  // K^s (0-based rows)
  bool nu_neg_inf = false;
  Rat nu;                       // valid unless nu_neg_inf
  std::vector<int> complement;  // K_s = L \ K^s
  bool slope_inf = false;
  Rat slope;  // sl_{K_s}, valid unless slope_inf
};

struct RayPartition {
  ParamPoint anchor;
  std::vector<int> L;
  bool vertex = false;
  std::vector<int> I;  // through / left segment circuit
  RatVec lamI, lamJ;   // full length |L|, aligned with L
  Rat d;               // 1 if vertex, else sum(lamJ * C)
  Rat a, b;            // sl_I and the J-side slope numerator
  std::vector<NuClass> classes;  // nu strictly decreasing, from 0 to -infinity
};

RayPartition ray_partition(const TwoParamFamily& f, const MoriChain& chain, int anchor_index);

enum class LinkType { I, II, III, IVm, IVs };

std::string to_string(LinkType t);

struct LinkArrow {
  WallKind kind = WallKind::Flip;
  int contracted_row = -1;
  std::vector<int> wall_I;  // 0-based
};

struct SarkisovLink {
  ChainAnchor anchor;
  RayPartition partition;
  LinkType type = LinkType::II;
  VarietyDescriptor R, T0, T1;
  std::vector<VarietyDescriptor> sectors;  // X_0 .. X_t around the anchor
  std::vector<LinkArrow> arrows;           // between consecutive sectors
  bool t0_drops = false, t1_drops = false;
};

SarkisovLink classify_link(const TwoParamFamily& f, const MoriChain& chain, int anchor_index);

struct SarkisovProgram {
  MoriChain chain;
  std::vector<SarkisovLink> links;
  VarietyDescriptor X, S, Y, T;  // endpoint Mori fibre spaces
};

// Full program from delta = 0 to delta = 1. When expected endpoints are
// given, verify_scaling gates the run.
SarkisovProgram run_sarkisov(const TwoParamFamily& f,
                             const VarietyDescriptor* expected_x = nullptr,
                             const VarietyDescriptor* expected_s = nullptr,
                             const VarietyDescriptor* expected_y = nullptr,
                             const VarietyDescriptor* expected_t = nullptr);

}  // namespace horosark
