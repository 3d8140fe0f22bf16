#include <algorithm>
#include <cmath>
#include <random>

#include "maxshape/geometry.hpp"
#include "maxshape/grid.hpp"

namespace maxshape {

namespace {

struct Spur {
  Point2 base;     // y0 on the network (split target)
  int base_edge;   // edge carrying y0, -1 if an existing vertex
  Point2 anchor;   // x0, the inmost point of the component
  double main_cap;        // |x0 - y0|
  double radius_cap;      // clearance around x0 for extra radii
};

// Split edges at the spur bases, then append spur polylines.
void attach_spur(CurveNetwork& net, const Spur& spur, double main_len,
                 const std::vector<double>& extra_radii, double angle0) {
  const double weld_eps = 1e-12 * std::max(1.0, total_length(net));
  // find or create the base vertex
  int base_idx = -1;
  for (std::size_t v = 0; v < net.vertices.size(); ++v)
    if (dist(net.vertices[v], spur.base) <= weld_eps) {
      base_idx = static_cast<int>(v);
      break;
    }
  if (base_idx < 0) {
    base_idx = static_cast<int>(net.vertices.size());
    net.vertices.push_back(spur.base);
    // split the carrying edge
    int carrier = -1;
    double carrier_t = 0.0;
    for (std::size_t e = 0; e < net.edges.size(); ++e) {
      const Segment s = net.segment(e);
      const double t = closest_segment_param(spur.base, s.a, s.b);
      if (dist(spur.base, s.a + (s.b - s.a) * t) <= 1e-9 * std::max(1.0, s.length())) {
        carrier = static_cast<int>(e);
        carrier_t = t;
        break;
      }
    }
    if (carrier >= 0 && carrier_t > 0.0 && carrier_t < 1.0) {
      const int b = net.edges[carrier][1];
      net.edges[carrier][1] = base_idx;
      net.edges.push_back({base_idx, b});
    }
  }
  const Point2 dir = (spur.anchor - spur.base) * (1.0 / std::max(spur.main_cap, 1e-300));
  int tip_idx = base_idx;
  if (main_len > 0.0) {
    tip_idx = static_cast<int>(net.vertices.size());
    net.vertices.push_back(spur.base + dir * main_len);
    net.edges.push_back({base_idx, tip_idx});
  }
  double th = angle0;
  for (double len : extra_radii) {
    const int r_idx = static_cast<int>(net.vertices.size());
    net.vertices.push_back({net.vertices[tip_idx].x + len * std::cos(th),
                            net.vertices[tip_idx].y + len * std::sin(th)});
    net.edges.push_back({tip_idx, r_idx});
    th += 2.0 * M_PI / 7.0;  // co-prime turn keeps radii distinct
  }
}

}  // namespace

CurveNetwork enlarge_to_length(const CurveNetwork& net, const DomainSpec& domain, double target,
                               std::uint64_t rng_seed, double grid_h) {
  net.validate();
  for (const auto& v : net.vertices)
    if (!domain.contains_closed(v, 1e-9))
      throw Error(ErrorCode::InvalidInput, "network vertex outside the closed domain");
  const double len = total_length(net);
  if (std::abs(target - len) <= net.tolerance) return net;
  if (target < len) throw Error(ErrorCode::TargetTooSmall, "target below current length");

  if (grid_h <= 0.0) {
    const BBox bb = domain.bounding_box();
    grid_h = std::min(bb.hi.x - bb.lo.x, bb.hi.y - bb.lo.y) / 128.0;
  }
  const auto grid = rasterize(domain, &net, grid_h);
  const OpenRegion region = components(grid);
  const DensityField dt = distance_transform(grid);

  // One spur site per complementary component: the inmost node (max distance
  // to ∂Ω ∪ Σ), aimed at its nearest network point.
  std::vector<Spur> spurs;
  std::vector<double> capacity;
  for (const auto& comp : region.components) {
    int argmax = comp.front();
    for (int v : comp)
      if (dt.values[v] > dt.values[argmax]) argmax = v;
    const double clearance = dt.values[argmax];
    if (clearance <= grid_h) continue;  // NoRoom: component below grid resolution
    const Point2 x0 = grid->node_point(argmax);
    int base_edge = -1;
    const Point2 y0 = closest_network_point(x0, net, &base_edge);
    Spur s;
    s.base = y0;
    s.base_edge = base_edge;
    s.anchor = x0;
    s.main_cap = dist(x0, y0);
    s.radius_cap = 0.9 * clearance;
    spurs.push_back(s);
    // a spur can absorb the approach segment plus a fan of radii
    capacity.push_back(s.main_cap + 32.0 * s.radius_cap);
  }
  if (spurs.empty())
    throw Error(ErrorCode::NoRoom, "no complementary component can host a spur");

  const double deficit = target - len;
  const std::size_t m = spurs.size();
  std::vector<double> budget(m, deficit / static_cast<double>(m));

  // cap each budget by its capacity; push overflow to the most capacious site
  double overflow = 0.0;
  std::size_t roomiest = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (capacity[i] > capacity[roomiest]) roomiest = i;
    if (budget[i] > capacity[i]) {
      overflow += budget[i] - capacity[i];
      budget[i] = capacity[i];
    }
  }
  budget[roomiest] += overflow;
  if (budget[roomiest] > capacity[roomiest])
    throw Error(ErrorCode::NoRoom, "domain cannot absorb the requested length");

  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> angle_dist(0.0, 2.0 * M_PI);

  CurveNetwork out = net;
  for (std::size_t i = 0; i < m; ++i) {
    const double angle0 = angle_dist(rng);
    const Spur& s = spurs[i];
    double want = budget[i];
    if (want <= 0.0) continue;
    const double main_len = std::min(want, s.main_cap);
    want -= main_len;
    std::vector<double> radii;
    while (want > 1e-15 * target) {
      const double r = std::min(want, s.radius_cap);
      radii.push_back(r);
      want -= r;
      if (radii.size() > 64) throw Error(ErrorCode::NoRoom, "component cannot absorb its share");
    }
    attach_spur(out, s, main_len, radii, angle0);
  }

  for (auto& v : out.vertices) v = domain.clamp(v);
  out = weld(out, 1e-12 * std::max(1.0, target));
  out.validate();
  if (std::abs(total_length(out) - target) > std::max(net.tolerance, 1e-9 * target))
    throw Error(ErrorCode::NoRoom, "spur construction could not realize the target length");
  return out;
}

}  // namespace maxshape
