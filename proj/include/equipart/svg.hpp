#pragma once

#include <string>
#include <vector>

#include "equipart/measures.hpp"

namespace equipart {

// Static SVG of a planar configuration: measure points colored by the sector
// of the first fan (or the side of the first line), with fan rays and lines
// drawn on top.
void write_planar_svg(const std::string& path, const std::vector<MassDistribution>& measures,
                      const std::vector<ComplexRegularQFan>& fans,
                      const std::vector<Hyperplane>& lines);

}  // namespace equipart
