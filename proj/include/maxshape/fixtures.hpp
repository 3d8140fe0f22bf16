#pragma once

#include <string>
#include <vector>

#include "maxshape/grid.hpp"

namespace maxshape::fixtures {

DomainSpec unit_square();
DomainSpec disk_domain(Point2 center, double radius, int ngon = 512);

// Region of a freshly rasterized disk (no obstacle network).
OpenRegion disk_region(Point2 center, double radius, double h, int ngon = 512);
OpenRegion square_region(double h);

CurveNetwork chord_vertical(double x, double tolerance = 1e-3);
CurveNetwork chord_horizontal(double y, double tolerance = 1e-3);
CurveNetwork segment_network(Point2 a, Point2 b, double tolerance = 1e-3);
// Plus sign at `center` with half arm lengths ax (horizontal) and ay (vertical).
CurveNetwork plus_network(Point2 center, double ax, double ay, double tolerance = 1e-3);

struct RegionPair {
  std::string name;
  OpenRegion a;
  OpenRegion b;
  OpenRegion whole;  // union of the two node sets on the same grid
};

// Disjoint-pair corpus: unit square split by ten different chords.
std::vector<RegionPair> separator_pairs(double h = 1.0 / 64);

// Rectangle split into `cells` strips of distinct widths (multi-component).
std::vector<OpenRegion> strip_family(int cells, double h = 1.0 / 64);

struct NestedPair {
  std::string name;
  OpenRegion small;
  OpenRegion big;
};
std::vector<NestedPair> nested_pairs(double h = 1.0 / 64);

}  // namespace maxshape::fixtures
