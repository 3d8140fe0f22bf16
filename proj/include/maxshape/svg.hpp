#pragma once

#include <string>
#include <vector>

#include "maxshape/audit.hpp"
#include "maxshape/grid.hpp"

namespace maxshape {

// Self-contained SVG figures (no plotting dependency).
std::string svg_network(const DomainSpec& domain, const CurveNetwork& net, int width = 640);
std::string svg_heatmap(const DensityField& field, const CurveNetwork* overlay = nullptr,
                        int width = 640);
std::string svg_density_chart(const AhlforsReport& report, int width = 640, int height = 420);

}  // namespace maxshape
