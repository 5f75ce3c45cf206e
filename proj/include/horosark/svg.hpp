#pragma once

#include <string>

#include "horosark/fixture.hpp"
#include "horosark/sarkisov.hpp"

namespace horosark {

// SVG rendering of the decomposition: delta horizontal in the strip, eps
// vertical increasing upward; red fibration walls, blue divisorial, black
// flips, gray isomorphisms; anchors and special points marked.
std::string emit_svg(const FixtureFile& fx, const TwoParamFamily& f, const Decomposition& dec);

}  // namespace horosark
