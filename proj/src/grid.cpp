#include "maxshape/grid.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "maxshape/parallel.hpp"

namespace maxshape {

std::shared_ptr<const Grid> rasterize(const DomainSpec& domain, const CurveNetwork* net, double h,
                                      std::size_t max_nodes) {
  if (h <= 0.0) throw Error(ErrorCode::InvalidInput, "grid spacing must be positive");
  const BBox bb = domain.bounding_box();
  auto g = std::make_shared<Grid>();
  g->h = h;
  g->origin = {bb.lo.x - h, bb.lo.y - h};
  g->nx = static_cast<int>(std::ceil((bb.hi.x - bb.lo.x) / h)) + 3;
  g->ny = static_cast<int>(std::ceil((bb.hi.y - bb.lo.y) / h)) + 3;
  if (static_cast<std::size_t>(g->nx) * g->ny > max_nodes)
    throw Error(ErrorCode::GridTooLarge, "grid exceeds the configured node cap");
  g->domain = domain;
  if (net) {
    g->net = *net;
    g->has_net = true;
  }
  const std::size_t n = g->node_count();
  g->node_class.assign(n, NodeClass::Outside);
  g->domain_free.assign(n, 0);

  Grid* gp = g.get();
  parallel_for(n, [gp, net](std::size_t lo, std::size_t hi) {
    for (std::size_t idx = lo; idx < hi; ++idx) {
      const Point2 p = gp->node_point(static_cast<int>(idx));
      const double half = gp->h / 2.0;
      const double db = gp->domain.boundary_distance(p);
      const bool inside = gp->domain.contains(p);
      gp->domain_free[idx] = (inside && db > half) ? 1 : 0;
      if (net && !net->empty() && distance_to_network(p, *net) <= half) {
        gp->node_class[idx] = NodeClass::Obstacle;
      } else if (db <= half) {
        gp->node_class[idx] = NodeClass::DomainBoundary;
      } else if (inside) {
        gp->node_class[idx] = NodeClass::Interior;
      }
    }
  });
  return g;
}

namespace {

std::vector<std::vector<int>> label_components(const Grid& grid, const std::vector<std::uint8_t>& free) {
  const int nx = grid.nx, ny = grid.ny;
  std::vector<int> label(grid.node_count(), -1);
  std::vector<std::vector<int>> comps;
  for (std::size_t start = 0; start < free.size(); ++start) {
    if (!free[start] || label[start] >= 0) continue;
    const int id = static_cast<int>(comps.size());
    comps.emplace_back();
    std::queue<int> q;
    q.push(static_cast<int>(start));
    label[start] = id;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      comps[id].push_back(v);
      const int i = v % nx, j = v / nx;
      const int nb[4] = {i > 0 ? v - 1 : -1, i + 1 < nx ? v + 1 : -1, j > 0 ? v - nx : -1,
                         j + 1 < ny ? v + nx : -1};
      for (int w : nb)
        if (w >= 0 && free[w] && label[w] < 0) {
          label[w] = id;
          q.push(w);
        }
    }
  }
  for (auto& c : comps) std::sort(c.begin(), c.end());
  std::sort(comps.begin(), comps.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  return comps;
}

OpenRegion build_region(const std::shared_ptr<const Grid>& grid, const std::vector<std::uint8_t>& free) {
  OpenRegion r;
  r.grid = grid;
  r.components = label_components(*grid, free);
  for (const auto& c : r.components) r.free_nodes.insert(r.free_nodes.end(), c.begin(), c.end());
  std::sort(r.free_nodes.begin(), r.free_nodes.end());
  return r;
}

}  // namespace

OpenRegion components(const std::shared_ptr<const Grid>& grid) {
  std::vector<std::uint8_t> free(grid->node_count(), 0);
  for (std::size_t i = 0; i < free.size(); ++i)
    free[i] = grid->node_class[i] == NodeClass::Interior ? 1 : 0;
  return build_region(grid, free);
}

OpenRegion region_from_mask(const std::shared_ptr<const Grid>& grid,
                            const std::vector<std::uint8_t>& mask) {
  if (mask.size() != grid->node_count())
    throw Error(ErrorCode::InvalidInput, "mask size does not match grid");
  return build_region(grid, mask);
}

OpenRegion OpenRegion::select(const std::vector<int>& component_ids) const {
  std::vector<std::uint8_t> mask(grid->node_count(), 0);
  for (int id : component_ids) {
    if (id < 0 || id >= static_cast<int>(components.size()))
      throw Error(ErrorCode::InvalidInput, "component id out of range");
    for (int v : components[id]) mask[v] = 1;
  }
  OpenRegion r = region_from_mask(grid, mask);
  r.boundary_distance_override = boundary_distance_override;
  return r;
}

namespace {

double exact_boundary_union_distance(const Grid& g, Point2 p) {
  double d = g.domain.boundary_distance(p);
  if (g.has_net && !g.net.empty()) d = std::min(d, distance_to_network(p, g.net));
  return d;
}

}  // namespace

DensityField distance_transform(const std::shared_ptr<const Grid>& grid) {
  bool has_generator = grid->has_net && !grid->net.empty();
  for (std::size_t i = 0; i < grid->node_count() && !has_generator; ++i)
    if (grid->node_class[i] == NodeClass::DomainBoundary || grid->node_class[i] == NodeClass::Obstacle)
      has_generator = true;
  if (!has_generator && grid->domain.boundary.empty())
    throw Error(ErrorCode::EmptySet, "no generating set for the distance transform");

  DensityField f;
  f.grid = grid;
  f.values.assign(grid->node_count(), 0.0);
  const Grid* gp = grid.get();
  double* out = f.values.data();
  parallel_for(grid->node_count(), [gp, out](std::size_t lo, std::size_t hi) {
    for (std::size_t idx = lo; idx < hi; ++idx) {
      if (gp->node_class[idx] != NodeClass::Interior) continue;
      out[idx] = exact_boundary_union_distance(*gp, gp->node_point(static_cast<int>(idx)));
    }
  });
  return f;
}

namespace {

// Golden-section refinement of the exact distance around the argmax node:
// alternating 1-D line searches along x and y inside the h-neighborhood.
double refine_inradius(const std::function<double(Point2)>& value, Point2 center, double h) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  Point2 best = center;
  double best_v = value(center);
  for (int sweep = 0; sweep < 2; ++sweep) {
    for (int axis = 0; axis < 2; ++axis) {
      double lo = -h, hi = h;
      auto at = [&](double t) {
        Point2 p = best;
        (axis == 0 ? p.x : p.y) += t;
        return p;
      };
      double c1 = hi - gr * (hi - lo), c2 = lo + gr * (hi - lo);
      double f1 = value(at(c1)), f2 = value(at(c2));
      for (int it = 0; it < 40; ++it) {
        if (f1 < f2) {
          lo = c1;
          c1 = c2;
          f1 = f2;
          c2 = lo + gr * (hi - lo);
          f2 = value(at(c2));
        } else {
          hi = c2;
          c2 = c1;
          f2 = f1;
          c1 = hi - gr * (hi - lo);
          f1 = value(at(c1));
        }
      }
      const double t = (lo + hi) / 2.0;
      const Point2 p = at(t);
      const double v = value(p);
      if (v > best_v) {
        best_v = v;
        best = p;
      }
    }
  }
  return best_v;
}

}  // namespace

double inradius(const OpenRegion& region, const DensityField& dt) {
  if (region.empty()) return 0.0;
  const Grid& g = *region.grid;
  if (region.boundary_distance_override) {
    const auto& fn = region.boundary_distance_override;
    int argmax = region.free_nodes.front();
    double vmax = fn(g.node_point(argmax));
    for (int v : region.free_nodes) {
      const double val = fn(g.node_point(v));
      if (val > vmax) {
        vmax = val;
        argmax = v;
      }
    }
    return std::max(vmax, refine_inradius(fn, g.node_point(argmax), g.h));
  }
  int argmax = region.free_nodes.front();
  double vmax = dt.values[argmax];
  for (int v : region.free_nodes) {
    if (dt.values[v] > vmax) {  // strict: ties keep the lowest node index
      vmax = dt.values[v];
      argmax = v;
    }
  }
  auto exact = [&g](Point2 p) { return exact_boundary_union_distance(g, p); };
  return std::max(vmax, refine_inradius(exact, g.node_point(argmax), g.h));
}

double inradius(const OpenRegion& region) {
  if (region.empty()) return 0.0;
  return inradius(region, distance_transform(region.grid));
}

}  // namespace maxshape
