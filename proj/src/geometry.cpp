#include "maxshape/geometry.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

namespace maxshape {

double closest_segment_param(Point2 p, Point2 a, Point2 b) {
  const Point2 d = b - a;
  const double l2 = dot(d, d);
  if (l2 == 0.0) return 0.0;
  return std::clamp(dot(p - a, d) / l2, 0.0, 1.0);
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const double t = closest_segment_param(p, a, b);
  return dist(p, a + (b - a) * t);
}

bool CurveNetwork::connected() const {
  if (vertices.empty()) return false;
  std::vector<int> parent(vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : edges) parent[find(e[0])] = find(e[1]);
  const int root = find(0);
  for (std::size_t v = 1; v < vertices.size(); ++v)
    if (find(static_cast<int>(v)) != root) return false;
  return true;
}

std::vector<int> CurveNetwork::vertex_degrees() const {
  std::vector<int> deg(vertices.size(), 0);
  for (const auto& e : edges) {
    ++deg[e[0]];
    ++deg[e[1]];
  }
  return deg;
}

double CurveNetwork::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      d = std::max(d, dist(vertices[i], vertices[j]));
  return d;
}

void CurveNetwork::validate() const {
  if (vertices.empty()) throw Error(ErrorCode::InvalidInput, "network has no vertices");
  for (const auto& v : vertices)
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
      throw Error(ErrorCode::InvalidInput, "non-finite vertex coordinate");
  for (const auto& e : edges) {
    if (e[0] < 0 || e[1] < 0 || e[0] >= static_cast<int>(vertices.size()) ||
        e[1] >= static_cast<int>(vertices.size()))
      throw Error(ErrorCode::InvalidInput, "edge index out of range");
    if (dist(vertices[e[0]], vertices[e[1]]) == 0.0)
      throw Error(ErrorCode::InvalidInput, "zero-length edge");
  }
  if (!connected()) throw Error(ErrorCode::InvalidInput, "network is not connected");
  if (!edges.empty() && total_length(*this) <= 0.0)
    throw Error(ErrorCode::InvalidInput, "non-positive total length");
}

BBox DomainSpec::bounding_box() const {
  BBox b{{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()},
         {std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()}};
  for (const auto& p : boundary) {
    b.lo.x = std::min(b.lo.x, p.x);
    b.lo.y = std::min(b.lo.y, p.y);
    b.hi.x = std::max(b.hi.x, p.x);
    b.hi.y = std::max(b.hi.y, p.y);
  }
  return b;
}

double DomainSpec::area() const {
  double a = 0.0;
  const std::size_t n = boundary.size();
  for (std::size_t i = 0; i < n; ++i) a += cross(boundary[i], boundary[(i + 1) % n]);
  return 0.5 * a;
}

Point2 DomainSpec::centroid() const {
  double a = 0.0, cx = 0.0, cy = 0.0;
  const std::size_t n = boundary.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 p = boundary[i], q = boundary[(i + 1) % n];
    const double w = cross(p, q);
    a += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  a *= 0.5;
  return {cx / (6.0 * a), cy / (6.0 * a)};
}

bool DomainSpec::contains(Point2 p) const {
  // Crossing-number test; points on the boundary count as outside the
  // strict interior.
  const std::size_t n = boundary.size();
  if (n < 3) return false;
  if (boundary_distance(p) == 0.0) return false;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = boundary[i], b = boundary[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xi = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < xi) inside = !inside;
    }
  }
  return inside;
}

bool DomainSpec::contains_closed(Point2 p, double eps) const {
  return contains(p) || boundary_distance(p) <= eps;
}

double DomainSpec::boundary_distance(Point2 p) const {
  double d = std::numeric_limits<double>::max();
  const std::size_t n = boundary.size();
  for (std::size_t i = 0; i < n; ++i)
    d = std::min(d, point_segment_distance(p, boundary[i], boundary[(i + 1) % n]));
  return d;
}

Point2 DomainSpec::clamp(Point2 p) const {
  if (contains(p)) return p;
  double best = std::numeric_limits<double>::max();
  Point2 q = p;
  const std::size_t n = boundary.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = boundary[i], b = boundary[(i + 1) % n];
    const double t = closest_segment_param(p, a, b);
    const Point2 c = a + (b - a) * t;
    const double d = dist(p, c);
    if (d < best) {
      best = d;
      q = c;
    }
  }
  return q;
}

void DomainSpec::validate() const {
  if (boundary.size() < 3) throw Error(ErrorCode::InvalidInput, "polygon needs >= 3 vertices");
  if (area() <= 0.0)
    throw Error(ErrorCode::InvalidInput, "polygon must be counterclockwise with positive area");
  // Simplicity: non-adjacent edges must not intersect.
  const std::size_t n = boundary.size();
  auto seg_intersect = [](Point2 a, Point2 b, Point2 c, Point2 d) {
    const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (seg_intersect(boundary[i], boundary[(i + 1) % n], boundary[j], boundary[(j + 1) % n]))
        throw Error(ErrorCode::InvalidInput, "polygon self-intersects");
    }
}

DomainSpec DomainSpec::rectangle(double x0, double y0, double x1, double y1) {
  return DomainSpec{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

DomainSpec DomainSpec::regular_polygon(Point2 c, double r, int n) {
  DomainSpec d;
  d.boundary.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * M_PI * k / n;
    d.boundary.push_back({c.x + r * std::cos(th), c.y + r * std::sin(th)});
  }
  return d;
}

double total_length(const CurveNetwork& net) {
  double s = 0.0;
  for (std::size_t e = 0; e < net.edges.size(); ++e) s += net.segment(e).length();
  return s;
}

double distance_to_network(Point2 p, const CurveNetwork& net) {
  if (net.empty()) throw Error(ErrorCode::EmptySet, "distance to empty network");
  double d = std::numeric_limits<double>::max();
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const Segment s = net.segment(e);
    d = std::min(d, point_segment_distance(p, s.a, s.b));
  }
  if (net.edges.empty())
    for (const auto& v : net.vertices) d = std::min(d, dist(p, v));
  return d;
}

Point2 closest_network_point(Point2 p, const CurveNetwork& net, int* edge_out) {
  if (net.empty()) throw Error(ErrorCode::EmptySet, "closest point of empty network");
  double best = std::numeric_limits<double>::max();
  Point2 q{};
  int best_edge = -1;
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const Segment s = net.segment(e);
    const double t = closest_segment_param(p, s.a, s.b);
    const Point2 c = s.a + (s.b - s.a) * t;
    const double d = dist(p, c);
    if (d < best) {  // strict: ties keep the lowest edge index
      best = d;
      q = c;
      best_edge = static_cast<int>(e);
    }
  }
  if (net.edges.empty()) {
    for (const auto& v : net.vertices) {
      const double d = dist(p, v);
      if (d < best) {
        best = d;
        q = v;
      }
    }
  }
  if (edge_out) *edge_out = best_edge;
  return q;
}

namespace {

// Arc-length samples of the network (vertices always included).
std::vector<Point2> sample_network(const CurveNetwork& net, double step) {
  std::vector<Point2> pts = net.vertices;
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const Segment s = net.segment(e);
    const double len = s.length();
    const int n = static_cast<int>(std::ceil(len / step));
    for (int k = 1; k < n; ++k) pts.push_back(s.a + (s.b - s.a) * (static_cast<double>(k) / n));
  }
  return pts;
}

}  // namespace

double hausdorff_distance(const CurveNetwork& n1, const CurveNetwork& n2) {
  if (n1.empty() || n2.empty()) throw Error(ErrorCode::EmptySet, "Hausdorff of empty set");
  const double step = std::min(n1.tolerance, n2.tolerance);
  double rho12 = 0.0, rho21 = 0.0;
  for (const Point2& p : sample_network(n1, step)) rho12 = std::max(rho12, distance_to_network(p, n2));
  for (const Point2& p : sample_network(n2, step)) rho21 = std::max(rho21, distance_to_network(p, n1));
  return std::max(rho12, rho21);
}

namespace {

// Parameter interval of segment [a,b] inside the closed disk, empty if none.
bool disk_interval(Point2 a, Point2 b, const Ball& ball, double* t0, double* t1) {
  const Point2 d = b - a, m = a - ball.center;
  const double A = dot(d, d);
  const double B = 2.0 * dot(m, d);
  const double C = dot(m, m) - ball.radius * ball.radius;
  const double disc = B * B - 4.0 * A * C;
  if (A == 0.0) {  // degenerate
    if (C <= 0.0) {
      *t0 = 0.0;
      *t1 = 1.0;
      return true;
    }
    return false;
  }
  if (disc < 0.0) return false;
  const double s = std::sqrt(disc);
  const double lo = (-B - s) / (2.0 * A);
  const double hi = (-B + s) / (2.0 * A);
  *t0 = std::max(lo, 0.0);
  *t1 = std::min(hi, 1.0);
  return *t1 > *t0;
}

}  // namespace

double length_in_ball(const CurveNetwork& net, const Ball& ball) {
  double total = 0.0;
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const Segment s = net.segment(e);
    double t0, t1;
    if (disk_interval(s.a, s.b, ball, &t0, &t1)) total += (t1 - t0) * s.length();
  }
  return total;
}

CurveNetwork weld(const CurveNetwork& net, double weld_eps) {
  CurveNetwork out;
  out.tolerance = net.tolerance;
  std::vector<int> remap(net.vertices.size(), -1);
  for (std::size_t v = 0; v < net.vertices.size(); ++v) {
    const Point2 p = net.vertices[v];
    int hit = -1;
    for (std::size_t w = 0; w < out.vertices.size(); ++w) {
      if (dist(out.vertices[w], p) <= weld_eps) {
        hit = static_cast<int>(w);
        break;
      }
    }
    if (hit < 0) {
      hit = static_cast<int>(out.vertices.size());
      out.vertices.push_back(p);
    }
    remap[v] = hit;
  }
  std::map<std::pair<int, int>, bool> seen;
  for (const auto& e : net.edges) {
    int u = remap[e[0]], w = remap[e[1]];
    if (u == w) continue;
    if (dist(out.vertices[u], out.vertices[w]) <= weld_eps) continue;
    auto key = std::minmax(u, w);
    if (seen.emplace(std::make_pair(key.first, key.second), true).second)
      out.edges.push_back({u, w});
  }
  return out;
}

CurveNetwork ball_surgery(const CurveNetwork& net, const Ball& ball, int arcs) {
  if (arcs < 16) throw Error(ErrorCode::InvalidInput, "arcs must be >= 16");
  if (net.edges.empty()) throw Error(ErrorCode::EmptySet, "surgery on empty network");
  const double r = ball.radius;
  const Point2 c = ball.center;

  // Circle crossing angles, and edge fragments outside the closed ball.
  std::vector<double> crossing_angles;
  struct Fragment {
    Point2 a, b;
  };
  std::vector<Fragment> fragments;
  bool touches = false;
  const double tiny = 1e-12 * std::max(1.0, r);
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const Segment s = net.segment(e);
    const double len = s.length();
    double t0, t1;
    if (!disk_interval(s.a, s.b, ball, &t0, &t1)) {
      const double dmin = point_segment_distance(c, s.a, s.b);
      if (std::abs(dmin - r) <= tiny) {
        // tangency: split so the touch point welds onto the ring
        touches = true;
        const double t = closest_segment_param(c, s.a, s.b);
        const Point2 p = s.a + (s.b - s.a) * t;
        const Point2 u = p - c;
        crossing_angles.push_back(std::atan2(u.y, u.x));
        fragments.push_back({s.a, p});
        fragments.push_back({p, s.b});
      } else {
        fragments.push_back({s.a, s.b});
      }
      continue;
    }
    touches = true;
    auto at = [&](double t) { return s.a + (s.b - s.a) * t; };
    if (t0 * len > tiny) {
      fragments.push_back({s.a, at(t0)});
      const Point2 p = at(t0) - c;
      crossing_angles.push_back(std::atan2(p.y, p.x));
    } else if (t0 > 0.0) {
      // endpoint effectively on the circle
      const Point2 p = s.a - c;
      crossing_angles.push_back(std::atan2(p.y, p.x));
    }
    if ((1.0 - t1) * len > tiny) {
      fragments.push_back({at(t1), s.b});
      const Point2 p = at(t1) - c;
      crossing_angles.push_back(std::atan2(p.y, p.x));
    } else if (t1 < 1.0) {
      const Point2 p = s.b - c;
      crossing_angles.push_back(std::atan2(p.y, p.x));
    }
  }
  for (const auto& v : net.vertices)
    if (std::abs(dist(v, c) - r) <= tiny) {
      touches = true;
      const Point2 p = v - c;
      crossing_angles.push_back(std::atan2(p.y, p.x));
    }

  if (!touches || crossing_angles.empty()) {
    // The circle must meet the network, otherwise (net \ B) ∪ ∂B is
    // disconnected (or the whole network vanished inside the ball).
    throw Error(ErrorCode::DisconnectedResult, "circle does not intersect the network");
  }

  std::sort(crossing_angles.begin(), crossing_angles.end());
  crossing_angles.erase(std::unique(crossing_angles.begin(), crossing_angles.end(),
                                    [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                        crossing_angles.end());

  // Ring vertices: arcs equally spaced angles phased at the first crossing,
  // merged with all crossing angles.
  std::vector<double> ring = crossing_angles;
  const double phase = crossing_angles.front();
  for (int k = 0; k < arcs; ++k) {
    double th = phase + 2.0 * M_PI * k / arcs;
    if (th >= M_PI) th -= 2.0 * M_PI;
    ring.push_back(th);
  }
  std::sort(ring.begin(), ring.end());
  ring.erase(std::unique(ring.begin(), ring.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-9; }),
             ring.end());

  CurveNetwork out;
  out.tolerance = net.tolerance;
  const int nring = static_cast<int>(ring.size());
  for (int k = 0; k < nring; ++k)
    out.vertices.push_back({c.x + r * std::cos(ring[k]), c.y + r * std::sin(ring[k])});
  for (int k = 0; k < nring; ++k) out.edges.push_back({k, (k + 1) % nring});
  for (const auto& f : fragments) {
    const int ia = static_cast<int>(out.vertices.size());
    out.vertices.push_back(f.a);
    out.vertices.push_back(f.b);
    out.edges.push_back({ia, ia + 1});
  }

  CurveNetwork welded = weld(out, 1e-9 * std::max(1.0, r));
  if (!welded.connected())
    throw Error(ErrorCode::DisconnectedResult, "surgery produced a disconnected network");
  return welded;
}

}  // namespace maxshape
