#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "maxshape/geometry.hpp"

namespace maxshape {

enum class NodeClass : std::uint8_t { Outside = 0, Interior = 1, DomainBoundary = 2, Obstacle = 3 };

// Uniform lattice over the domain bounding box with a one-cell margin.
struct Grid {
  double h = 0.0;
  int nx = 0;
  int ny = 0;
  Point2 origin;
  std::vector<NodeClass> node_class;   // row-major, index = j*nx + i
  std::vector<std::uint8_t> domain_free;  // inside Ω and > h/2 from ∂Ω (ignores the network)
  DomainSpec domain;
  CurveNetwork net;  // may be empty
  bool has_net = false;

  int index(int i, int j) const { return j * nx + i; }
  Point2 node_point(int i, int j) const { return {origin.x + i * h, origin.y + j * h}; }
  Point2 node_point(int idx) const { return node_point(idx % nx, idx / nx); }
  std::size_t node_count() const { return static_cast<std::size_t>(nx) * ny; }
};

// Connected-component-decomposed node mask (an open set A ⊆ Ω).
struct OpenRegion {
  std::shared_ptr<const Grid> grid;
  std::vector<int> free_nodes;               // ascending node indices
  std::vector<std::vector<int>> components;  // decreasing size, ties by smallest index
  // d(·, ∂A) for regions whose boundary is not ∂Ω ∪ Σ (e.g. masks with a
  // ball carved out); empty means the grid geometry applies.
  std::function<double(Point2)> boundary_distance_override;

  bool empty() const { return free_nodes.empty(); }
  std::size_t size() const { return free_nodes.size(); }
  // Sub-region made of the selected components (re-labelled canonically).
  OpenRegion select(const std::vector<int>& component_ids) const;
};

struct DensityField {
  std::shared_ptr<const Grid> grid;
  std::vector<double> values;  // per node; 0 on generating-set and outside nodes
};

// Node classification: Obstacle iff d(node, net) <= h/2; else DomainBoundary
// iff d(node, ∂Ω) <= h/2; else Interior iff strictly inside Ω; else Outside.
// Throws GridTooLarge when nx*ny exceeds max_nodes.
std::shared_ptr<const Grid> rasterize(const DomainSpec& domain, const CurveNetwork* net, double h,
                                      std::size_t max_nodes = (1u << 22));

// 4-connected components of the Interior nodes.
OpenRegion components(const std::shared_ptr<const Grid>& grid);

// Region from an arbitrary free-node mask on an existing grid.
OpenRegion region_from_mask(const std::shared_ptr<const Grid>& grid,
                            const std::vector<std::uint8_t>& mask);

// Exact Euclidean distance to ∂Ω ∪ Σ per Interior node.
DensityField distance_transform(const std::shared_ptr<const Grid>& grid);

// max over free nodes of the distance transform, refined by a local
// golden-section pass around the argmax against exact distances.
double inradius(const OpenRegion& region, const DensityField& dt);
double inradius(const OpenRegion& region);

}  // namespace maxshape
