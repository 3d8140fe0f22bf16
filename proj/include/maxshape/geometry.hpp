#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "maxshape/errors.hpp"

namespace maxshape {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
  Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
  Point2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Point2&) const = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }

struct Segment {
  Point2 a;
  Point2 b;
  double length() const { return dist(a, b); }
};

struct Ball {
  Point2 center;
  double radius = 0.0;
};

// Distance from p to the segment [a,b].
double point_segment_distance(Point2 p, Point2 a, Point2 b);
// Closest point of [a,b] to p, as parameter t in [0,1].
double closest_segment_param(Point2 p, Point2 a, Point2 b);

// Embedded planar straight-line graph. Isolated vertices are permitted for
// point-set geometry (distances, Hausdorff); optimization-admissible networks
// additionally satisfy validate().
struct CurveNetwork {
  std::vector<Point2> vertices;
  std::vector<std::array<int, 2>> edges;
  double tolerance = 1e-3;  // sampling step for Hausdorff, length slack

  bool empty() const { return vertices.empty(); }
  Segment segment(std::size_t e) const {
    return {vertices[edges[e][0]], vertices[edges[e][1]]};
  }
  std::size_t edge_count() const { return edges.size(); }

  // Connectivity over the union of edges plus isolated vertices.
  bool connected() const;
  std::vector<int> vertex_degrees() const;
  double diameter() const;  // max pairwise vertex distance

  // Throws InvalidInput unless: non-empty, connected, no zero-length edge,
  // positive total length, edge indices in range.
  void validate() const;
};

struct BBox {
  Point2 lo;
  Point2 hi;
};

// Simple polygon (counterclockwise, implicitly closed).
struct DomainSpec {
  std::vector<Point2> boundary;

  BBox bounding_box() const;
  double area() const;          // signed shoelace, positive for CCW
  Point2 centroid() const;
  bool contains(Point2 p) const;          // strict interior
  bool contains_closed(Point2 p, double eps = 1e-12) const;
  double boundary_distance(Point2 p) const;  // distance to the boundary chain
  Point2 clamp(Point2 p) const;  // nearest point of the closed domain
  void validate() const;

  static DomainSpec rectangle(double x0, double y0, double x1, double y1);
  static DomainSpec regular_polygon(Point2 center, double radius, int n);
};

double total_length(const CurveNetwork& net);

// Exact point-to-set distance d(p, net). Throws EmptySet on empty nets.
double distance_to_network(Point2 p, const CurveNetwork& net);

// Closest point of the network to p; ties broken by lowest edge index
// (isolated vertices rank after all edges).
Point2 closest_network_point(Point2 p, const CurveNetwork& net, int* edge_out = nullptr);

// Symmetric Hausdorff distance, evaluated by sampling each network at arc
// length step <= min(tolerance) and exact point-to-segment distances.
double hausdorff_distance(const CurveNetwork& n1, const CurveNetwork& n2);

// Exact H^1(net ∩ B): clip each edge against the disk.
double length_in_ball(const CurveNetwork& net, const Ball& ball);

// Replace net ∩ closed ball by an arcs-gon approximation of the circle.
// Throws DisconnectedResult when the circle does not meet the network.
CurveNetwork ball_surgery(const CurveNetwork& net, const Ball& ball, int arcs);

// Connected superset of `net` of prescribed total length: plants one spur per
// complementary component (enumerated on a companion grid of spacing grid_h;
// grid_h <= 0 picks a default from the domain size), then spends any remainder
// as radii inside the most capacious component. Deterministic given the seed.
CurveNetwork enlarge_to_length(const CurveNetwork& net, const DomainSpec& domain, double target,
                               std::uint64_t rng_seed, double grid_h = 0.0);

// Merge coincident vertices (distance <= weld_eps), drop degenerate edges.
CurveNetwork weld(const CurveNetwork& net, double weld_eps);

// Regular-polygon perimeter of the arcs-gon inscribed in a circle of radius r.
inline double inscribed_polygon_perimeter(double r, int arcs) {
  return 2.0 * arcs * r * std::sin(M_PI / arcs);
}

}  // namespace maxshape
