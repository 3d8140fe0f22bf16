#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "maxshape/audit.hpp"
#include "maxshape/fixtures.hpp"
#include "maxshape/geometry.hpp"

using namespace maxshape;

namespace {

CurveNetwork two_point_net(Point2 a, Point2 b) {
  CurveNetwork n;
  n.vertices = {a, b};
  n.edges = {{0, 1}};
  n.tolerance = 1e-3;
  return n;
}

}  // namespace

TEST_CASE("total_length: unit segment and plus sign") {
  CHECK(total_length(two_point_net({0, 0}, {1, 0})) == doctest::Approx(1.0));
  const CurveNetwork plus = fixtures::plus_network({0, 0}, 1.0, 1.0);
  CHECK(total_length(plus) == doctest::Approx(4.0));
}

TEST_CASE("total_length: truncated figure-1 family sums the geometric series") {
  for (int n : {0, 3, 10}) {
    const CurveNetwork s = figure1_right(n);
    CHECK(total_length(s) == doctest::Approx(2.0 - std::pow(2.0, -n)).epsilon(1e-12));
  }
}

TEST_CASE("distance_to_network basics") {
  const CurveNetwork seg = two_point_net({-1, 0}, {1, 0});
  CHECK(distance_to_network({0, 1}, seg) == doctest::Approx(1.0));
  CHECK(distance_to_network({0.3, 0}, seg) == doctest::Approx(0.0));
  CHECK(distance_to_network({2, 0}, seg) == doctest::Approx(1.0));  // nearest endpoint
  CHECK_THROWS_AS(distance_to_network({0, 0}, CurveNetwork{}), Error);
}

TEST_CASE("hausdorff distance on elementary sets") {
  CurveNetwork p, q;
  p.vertices = {{0, 0}};
  q.vertices = {{3, 4}};
  CHECK(hausdorff_distance(p, q) == doctest::Approx(5.0));

  const double eps = 0.125;
  const CurveNetwork a = two_point_net({0, 0}, {1, 0});
  const CurveNetwork b = two_point_net({0, eps}, {1, eps});
  CHECK(hausdorff_distance(a, b) == doctest::Approx(eps).epsilon(1e-9));

  // center point vs polygonal circle of radius r
  const double r = 0.75;
  CurveNetwork circle;
  const int n = 256;
  for (int k = 0; k < n; ++k) {
    circle.vertices.push_back({r * std::cos(2 * M_PI * k / n), r * std::sin(2 * M_PI * k / n)});
    circle.edges.push_back({k, (k + 1) % n});
  }
  circle.tolerance = 1e-3;
  CurveNetwork center;
  center.vertices = {{0, 0}};
  center.tolerance = 1e-3;
  CHECK(hausdorff_distance(center, circle) == doctest::Approx(r).epsilon(2e-3));
}

TEST_CASE("hausdorff distance is a metric on sampled sets") {
  const CurveNetwork a = two_point_net({0, 0}, {1, 0});
  const CurveNetwork b = two_point_net({0, 0.2}, {1, 0.3});
  CurveNetwork c = fixtures::plus_network({0.5, 0.1}, 0.4, 0.3);
  c.tolerance = 1e-3;

  CHECK(hausdorff_distance(a, b) == hausdorff_distance(b, a));  // symmetric, exactly
  const double ab = hausdorff_distance(a, b), bc = hausdorff_distance(b, c),
               ac = hausdorff_distance(a, c);
  CHECK(ac <= ab + bc + 3.0 * 1e-3);
  CHECK(hausdorff_distance(a, a) == 0.0);
}

TEST_CASE("length_in_ball: chords, radii, and the figure-1 densities") {
  const Ball ball{{0, 0}, 1.0};
  // full diameter chord
  CHECK(length_in_ball(two_point_net({-2, 0}, {2, 0}), ball) == doctest::Approx(2.0));
  // one endpoint at the center, length beyond the radius
  CHECK(length_in_ball(two_point_net({0, 0}, {3, 0}), ball) == doctest::Approx(1.0));

  // h(r) = (2+n)/2^n at r = 2^-n for the tail-compensated fixture
  for (int n : {2, 5, 10}) {
    const CurveNetwork s = figure1_right(n, /*tail_compensated=*/true);
    const double r = std::pow(2.0, -n);
    const double h = length_in_ball(s, Ball{{0, 0}, r});
    CHECK(h / r == doctest::Approx(2.0 + n).epsilon(1e-12));
  }
}

TEST_CASE("length_in_ball is nondecreasing in r and bounded by the total") {
  const CurveNetwork net = fixtures::plus_network({0.1, 0.2}, 0.7, 0.5);
  double prev = 0.0;
  for (double r = 0.05; r <= 2.0; r += 0.05) {
    const double v = length_in_ball(net, Ball{{0.1, 0.2}, r});
    CHECK(v >= prev - 1e-12);
    CHECK(v <= total_length(net) + 1e-12);
    prev = v;
  }
}

TEST_CASE("lower Ahlfors bound c1=1 for connected networks") {
  const CurveNetwork nets[] = {
      two_point_net({0, 0}, {1, 0}),
      fixtures::plus_network({0.5, 0.5}, 0.5, 0.5),
      figure1_left(),
  };
  for (const auto& net : nets) {
    const double diam = net.diameter();
    for (const auto& x : net.vertices)
      for (double r : {diam / 8.0, diam / 4.0, diam / 2.5}) {
        if (r >= diam / 2.0) continue;
        CHECK(length_in_ball(net, Ball{x, r}) >= r - 1e-9);
      }
  }
}

TEST_CASE("ball_surgery: chord replacement length accounting") {
  const int arcs = 64;
  const CurveNetwork seg = two_point_net({-2, 0}, {2, 0});
  const CurveNetwork out = ball_surgery(seg, Ball{{0, 0}, 1.0}, arcs);
  CHECK(out.connected());
  // crossings at angles 0 and π coincide with ring vertices, so the length
  // is exactly 4 - 2 + perimeter(arcs-gon)
  const double expected = 4.0 - 2.0 + inscribed_polygon_perimeter(1.0, arcs);
  CHECK(total_length(out) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("ball_surgery: radius from the center") {
  const int arcs = 64;
  const CurveNetwork seg = two_point_net({0, 0}, {3, 0});
  const CurveNetwork out = ball_surgery(seg, Ball{{0, 0}, 1.0}, arcs);
  CHECK(out.connected());
  const double expected = 3.0 - 1.0 + inscribed_polygon_perimeter(1.0, arcs);
  CHECK(total_length(out) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("ball_surgery: generic length identity within polygonization error") {
  const CurveNetwork net = fixtures::plus_network({0.0, 0.0}, 1.0, 0.8);
  for (double r : {0.3, 0.55}) {
    for (int arcs : {32, 128}) {
      const Ball ball{{0.15, 0.1}, r};
      const CurveNetwork out = ball_surgery(net, ball, arcs);
      CHECK(out.connected());
      const double ideal = total_length(net) - length_in_ball(net, ball) + 2 * M_PI * r;
      // 2πr(1 - sinc(π/arcs)) polygonization defect plus crossing insertions
      const double defect = 2 * M_PI * r - inscribed_polygon_perimeter(r, arcs);
      CHECK(total_length(out) == doctest::Approx(ideal).epsilon((defect + 1e-9) / ideal * 4));
    }
  }
}

TEST_CASE("ball_surgery: disconnected cases are rejected") {
  const CurveNetwork seg = two_point_net({0, 0}, {1, 0});
  CHECK_THROWS_AS(ball_surgery(seg, Ball{{5, 5}, 0.5}, 32), Error);     // circle misses Σ
  CHECK_THROWS_AS(ball_surgery(seg, Ball{{0.5, 0}, 10.0}, 32), Error);  // Σ inside the ball
}

TEST_CASE("enlarge_to_length: identity and growth") {
  const DomainSpec square = fixtures::unit_square();
  CurveNetwork seg = two_point_net({0.25, 0.5}, {0.75, 0.5});
  seg.tolerance = 1e-9;

  const CurveNetwork same = enlarge_to_length(seg, square, 0.5, 7);
  CHECK(total_length(same) == doctest::Approx(0.5));

  CurveNetwork unit = two_point_net({0.0, 0.5}, {1.0, 0.5});
  unit.tolerance = 1e-9;
  const CurveNetwork grown = enlarge_to_length(unit, square, 1.5, 7, 1.0 / 64);
  CHECK(grown.connected());
  CHECK(total_length(grown) == doctest::Approx(1.5).epsilon(1e-9));
  // contains the input: sampled points of Σ stay on Σ'
  for (double t = 0.0; t <= 1.0; t += 0.05)
    CHECK(distance_to_network({t, 0.5}, grown) <= 1e-9);

  CHECK_THROWS_AS(enlarge_to_length(unit, square, 0.5, 7), Error);
}

TEST_CASE("enlarge_to_length: every complementary component shrinks strictly") {
  const DomainSpec square = fixtures::unit_square();
  CurveNetwork chord = fixtures::chord_vertical(0.5, 1e-9);
  const double h = 1.0 / 64;
  const CurveNetwork grown = enlarge_to_length(chord, square, 1.6, 3, h);
  CHECK(total_length(grown) == doctest::Approx(1.6).epsilon(1e-9));

  const auto before = components(rasterize(square, &chord, h));
  const auto after = components(rasterize(square, &grown, h));
  REQUIRE(before.components.size() == 2);
  REQUIRE(after.components.size() >= 2);
  // each new component is strictly contained in an old one
  std::vector<std::vector<char>> in_old;
  for (const auto& oc : before.components) {
    std::vector<char> mask(before.grid->node_count(), 0);
    for (int v : oc) mask[v] = 1;
    in_old.push_back(std::move(mask));
  }
  for (const auto& nc : after.components) {
    bool contained_strictly = false;
    for (std::size_t o = 0; o < in_old.size(); ++o) {
      bool subset = true;
      for (int v : nc)
        if (!in_old[o][v]) {
          subset = false;
          break;
        }
      if (subset && nc.size() < before.components[o].size()) contained_strictly = true;
    }
    CHECK(contained_strictly);
  }
}

TEST_CASE("network validation rejects deformed inputs") {
  CurveNetwork dust;
  dust.vertices = {{0, 0}, {1, 0}};
  CHECK_THROWS_AS(dust.validate(), Error);  // disconnected

  CurveNetwork degen;
  degen.vertices = {{0, 0}, {0, 0}};
  degen.edges = {{0, 1}};
  CHECK_THROWS_AS(degen.validate(), Error);  // zero-length edge
}
