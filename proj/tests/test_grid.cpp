#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "maxshape/fixtures.hpp"
#include "maxshape/grid.hpp"

using namespace maxshape;

namespace {

int count_class(const Grid& g, NodeClass c) {
  int n = 0;
  for (auto v : g.node_class)
    if (v == c) ++n;
  return n;
}

}  // namespace

TEST_CASE("rasterize: no network means no obstacle nodes") {
  const auto g = rasterize(fixtures::unit_square(), nullptr, 1.0 / 32);
  CHECK(count_class(*g, NodeClass::Obstacle) == 0);
  CHECK(count_class(*g, NodeClass::Interior) > 0);
}

TEST_CASE("rasterize: a horizontal chord leaves a one-node-thick band") {
  const double h = 1.0 / 64;
  const CurveNetwork chord = fixtures::chord_horizontal(0.5);
  const auto g = rasterize(fixtures::unit_square(), &chord, h);
  // every obstacle node is within h/2 of the chord
  int per_column_max = 0;
  for (int i = 0; i < g->nx; ++i) {
    int col = 0;
    for (int j = 0; j < g->ny; ++j)
      if (g->node_class[g->index(i, j)] == NodeClass::Obstacle) {
        ++col;
        CHECK(std::abs(g->node_point(i, j).y - 0.5) <= h / 2 + 1e-12);
      }
    per_column_max = std::max(per_column_max, col);
  }
  CHECK(per_column_max == 1);
}

TEST_CASE("rasterize: obstacle band area decays first-order under refinement") {
  // transversal (irrational slope) segment so bands do not align with the grid
  const CurveNetwork seg = fixtures::segment_network({0.102, 0.204}, {0.871, 0.743});
  double prev_area = -1.0;
  for (double h : {1.0 / 32, 1.0 / 64, 1.0 / 128}) {
    const auto g = rasterize(fixtures::unit_square(), &seg, h);
    const double area = h * h * count_class(*g, NodeClass::Obstacle);
    if (prev_area > 0.0) {
      const double ratio = prev_area / area;
      CHECK(ratio > 1.5);
      CHECK(ratio < 2.6);
    }
    prev_area = area;
  }
}

TEST_CASE("rasterize: node cap is enforced") {
  CHECK_THROWS_AS(rasterize(fixtures::unit_square(), nullptr, 1e-4, 1u << 16), Error);
}

TEST_CASE("components: chord, short segment, plus") {
  const double h = 1.0 / 64;
  const DomainSpec sq = fixtures::unit_square();

  const CurveNetwork chord = fixtures::chord_vertical(0.5);
  CHECK(components(rasterize(sq, &chord, h)).components.size() == 2);

  const CurveNetwork short_seg = fixtures::segment_network({0.4, 0.5}, {0.6, 0.5});
  CHECK(components(rasterize(sq, &short_seg, h)).components.size() == 1);

  const CurveNetwork plus = fixtures::plus_network({0.5, 0.5}, 0.5, 0.5);
  CHECK(components(rasterize(sq, &plus, h)).components.size() == 4);
}

TEST_CASE("components are ordered by size then lowest node index") {
  const auto parts = fixtures::strip_family(8);
  REQUIRE(parts.size() >= 2);
  const auto whole = components(parts.front().grid);
  for (std::size_t c = 1; c < whole.components.size(); ++c) {
    CHECK(whole.components[c - 1].size() >= whole.components[c].size());
    if (whole.components[c - 1].size() == whole.components[c].size())
      CHECK(whole.components[c - 1].front() < whole.components[c].front());
  }
}

TEST_CASE("distance_transform: disk, half disk, square") {
  const double h = 1.0 / 64;
  {
    const auto g = rasterize(fixtures::disk_domain({0, 0}, 1.0), nullptr, h);
    const DensityField dt = distance_transform(g);
    double best = 0.0;
    for (double v : dt.values) best = std::max(best, v);
    CHECK(best == doctest::Approx(1.0).epsilon(2e-3));
  }
  {
    const CurveNetwork diameter = fixtures::segment_network({-1, 0}, {1, 0});
    const auto g = rasterize(fixtures::disk_domain({0, 0}, 1.0), &diameter, h);
    const DensityField dt = distance_transform(g);
    double best = 0.0;
    for (double v : dt.values) best = std::max(best, v);
    CHECK(best == doctest::Approx(0.5).epsilon(2 * h));
  }
  {
    const auto g = rasterize(fixtures::unit_square(), nullptr, h);
    const DensityField dt = distance_transform(g);
    double best = 0.0;
    int arg = 0;
    for (std::size_t i = 0; i < dt.values.size(); ++i)
      if (dt.values[i] > best) {
        best = dt.values[i];
        arg = static_cast<int>(i);
      }
    CHECK(best == doctest::Approx(0.5).epsilon(h));
    CHECK(dist(g->node_point(arg), {0.5, 0.5}) <= 2 * h);
  }
}

TEST_CASE("distance_transform: zero on generating nodes, small next to them") {
  const double h = 1.0 / 64;
  const CurveNetwork chord = fixtures::chord_horizontal(0.37);
  const auto g = rasterize(fixtures::unit_square(), &chord, h);
  const DensityField dt = distance_transform(g);
  for (int j = 0; j < g->ny; ++j)
    for (int i = 0; i < g->nx; ++i) {
      const int v = g->index(i, j);
      if (g->node_class[v] != NodeClass::Interior) {
        CHECK(dt.values[v] == 0.0);
        continue;
      }
      // neighbors of obstacle/boundary nodes: at most h/2 (band half-width)
      // plus one lattice step away from the generating set
      const int nb[4] = {i > 0 ? v - 1 : -1, i + 1 < g->nx ? v + 1 : -1,
                         j > 0 ? v - g->nx : -1, j + 1 < g->ny ? v + g->nx : -1};
      for (int w : nb)
        if (w >= 0 && (g->node_class[w] == NodeClass::Obstacle ||
                       g->node_class[w] == NodeClass::DomainBoundary))
          CHECK(dt.values[v] <= 1.5 * g->h + 1e-12);
    }
}

TEST_CASE("inradius: conventions and refinement accuracy") {
  OpenRegion empty;
  empty.grid = rasterize(fixtures::unit_square(), nullptr, 1.0 / 16);
  CHECK(inradius(empty) == 0.0);

  // half disk of a unit-radius disk: symmetry forces the value 1/2
  const double h = 1.0 / 64;
  const CurveNetwork diameter = fixtures::segment_network({-1, 0}, {1, 0});
  const auto g = rasterize(fixtures::disk_domain({0, 0}, 1.0), &diameter, h);
  const OpenRegion region = components(g);
  CHECK(inradius(region) == doctest::Approx(0.5).epsilon(h));
}

TEST_CASE("inradius: disjoint union evaluates componentwise, exactly") {
  const auto parts = fixtures::strip_family(6);
  REQUIRE(parts.size() >= 3);
  const auto grid = parts.front().grid;
  const OpenRegion whole = components(grid);
  const DensityField dt = distance_transform(grid);
  double part_max = 0.0;
  for (std::size_t c = 0; c < whole.components.size(); ++c)
    part_max = std::max(part_max, inradius(whole.select({static_cast<int>(c)}), dt));
  CHECK(inradius(whole, dt) == part_max);  // bitwise equality
}

TEST_CASE("inradius: monotone under obstacle growth") {
  const double h = 1.0 / 64;
  const DomainSpec sq = fixtures::unit_square();
  const CurveNetwork small_net = fixtures::plus_network({0.5, 0.5}, 0.2, 0.2);
  const CurveNetwork big_net = fixtures::plus_network({0.5, 0.5}, 0.45, 0.45);
  const double r_small = inradius(components(rasterize(sq, &small_net, h)));
  const double r_big = inradius(components(rasterize(sq, &big_net, h)));
  CHECK(r_big <= r_small + 1e-12);
}

TEST_CASE("inradius: grid refinement self-convergence") {
  const DomainSpec sq = fixtures::unit_square();
  const CurveNetwork net = fixtures::plus_network({0.45, 0.55}, 0.3, 0.25);
  double prev = -1.0;
  for (double h : {1.0 / 32, 1.0 / 64, 1.0 / 128}) {
    const double r = inradius(components(rasterize(sq, &net, h)));
    if (prev > 0.0) CHECK(std::abs(r - prev) <= 4.0 * h);
    prev = r;
  }
}
