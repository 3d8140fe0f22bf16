#include "maxshape/fixtures.hpp"

#include <cmath>

namespace maxshape::fixtures {

DomainSpec unit_square() { return DomainSpec::rectangle(0.0, 0.0, 1.0, 1.0); }

DomainSpec disk_domain(Point2 center, double radius, int ngon) {
  return DomainSpec::regular_polygon(center, radius, ngon);
}

OpenRegion disk_region(Point2 center, double radius, double h, int ngon) {
  return components(rasterize(disk_domain(center, radius, ngon), nullptr, h));
}

OpenRegion square_region(double h) { return components(rasterize(unit_square(), nullptr, h)); }

CurveNetwork segment_network(Point2 a, Point2 b, double tolerance) {
  CurveNetwork net;
  net.vertices = {a, b};
  net.edges = {{0, 1}};
  net.tolerance = tolerance;
  return net;
}

CurveNetwork chord_vertical(double x, double tolerance) {
  return segment_network({x, 0.0}, {x, 1.0}, tolerance);
}

CurveNetwork chord_horizontal(double y, double tolerance) {
  return segment_network({0.0, y}, {1.0, y}, tolerance);
}

CurveNetwork plus_network(Point2 c, double ax, double ay, double tolerance) {
  CurveNetwork net;
  net.vertices = {c, {c.x - ax, c.y}, {c.x + ax, c.y}, {c.x, c.y - ay}, {c.x, c.y + ay}};
  net.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  net.tolerance = tolerance;
  return net;
}

std::vector<RegionPair> separator_pairs(double h) {
  std::vector<RegionPair> out;
  const DomainSpec square = unit_square();
  auto add = [&](const std::string& name, const CurveNetwork& sep) {
    const auto grid = rasterize(square, &sep, h);
    OpenRegion whole = components(grid);
    if (whole.components.size() < 2) return;  // separator failed to split
    RegionPair pr;
    pr.name = name;
    pr.whole = whole;
    pr.a = whole.select({0});
    pr.b = whole.select({1});
    out.push_back(std::move(pr));
  };
  for (double x : {0.30, 0.40, 0.50, 0.60, 0.70})
    add("vsplit_" + std::to_string(x).substr(0, 4), chord_vertical(x));
  for (double y : {0.25, 0.45, 0.65})
    add("hsplit_" + std::to_string(y).substr(0, 4), chord_horizontal(y));
  add("diag_a", segment_network({0.0, 0.0}, {1.0, 1.0}));
  add("diag_b", segment_network({0.0, 1.0}, {1.0, 0.0}));
  return out;
}

std::vector<OpenRegion> strip_family(int cells, double h) {
  // vertical full chords at geometrically spaced positions give strips of
  // distinct widths, hence distinct inradii and torsion values
  CurveNetwork comb;
  comb.tolerance = 1e-3;
  std::vector<double> cuts;
  double x = 0.0;
  double w = 0.22;
  for (int i = 0; i + 1 < cells; ++i) {
    x += w;
    if (x >= 0.96) break;
    cuts.push_back(x);
    w *= 0.82;
  }
  // one connected comb: a spine along the bottom edge plus the teeth
  comb.vertices.push_back({0.0, 0.0});
  comb.vertices.push_back({1.0, 0.0});
  comb.edges.push_back({0, 1});
  for (double cx : cuts) {
    const int a = static_cast<int>(comb.vertices.size());
    comb.vertices.push_back({cx, 0.0});
    comb.vertices.push_back({cx, 1.0});
    comb.edges.push_back({a, a + 1});
  }
  const auto grid = rasterize(unit_square(), &comb, h);
  OpenRegion whole = components(grid);
  std::vector<OpenRegion> parts;
  for (std::size_t c = 0; c < whole.components.size(); ++c)
    parts.push_back(whole.select({static_cast<int>(c)}));
  return parts;
}

std::vector<NestedPair> nested_pairs(double h) {
  std::vector<NestedPair> out;
  const DomainSpec square = unit_square();
  {
    NestedPair np;
    np.name = "square_vs_square_minus_chord";
    const CurveNetwork sep = chord_vertical(0.5);
    np.small = components(rasterize(square, &sep, h));
    np.big = components(rasterize(square, nullptr, h));
    out.push_back(std::move(np));
  }
  {
    NestedPair np;
    np.name = "square_minus_plus_vs_minus_short_plus";
    const CurveNetwork big_obstacle = plus_network({0.5, 0.5}, 0.40, 0.40);
    const CurveNetwork small_obstacle = plus_network({0.5, 0.5}, 0.20, 0.20);
    np.small = components(rasterize(square, &big_obstacle, h));
    np.big = components(rasterize(square, &small_obstacle, h));
    out.push_back(std::move(np));
  }
  {
    NestedPair np;
    np.name = "equal_regions";
    const CurveNetwork sep = chord_horizontal(0.5);
    np.small = components(rasterize(square, &sep, h));
    np.big = np.small;
    out.push_back(std::move(np));
  }
  return out;
}

}  // namespace maxshape::fixtures
