#include "maxshape/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <unordered_map>

#include "maxshape/json_io.hpp"

namespace maxshape {

const char* to_string(MoveKind m) {
  switch (m) {
    case MoveKind::PerturbVertex: return "PerturbVertex";
    case MoveKind::SplitEdge: return "SplitEdge";
    case MoveKind::SlideBranch: return "SlideBranch";
    case MoveKind::BallSurgery: return "BallSurgery";
    case MoveKind::EnlargeSpur: return "EnlargeSpur";
    case MoveKind::PruneSpur: return "PruneSpur";
  }
  return "?";
}

double OptConfig::length_capacity() const { return capacity_fraction * domain.area() / grid_h; }

void OptConfig::validate() const {
  domain.validate();
  if (L <= 0.0) throw Error(ErrorCode::InvalidInput, "L must be positive");
  if (grid_h <= 0.0) throw Error(ErrorCode::InvalidInput, "grid_h must be positive");
  if (iterations < 0) throw Error(ErrorCode::InvalidInput, "iterations must be >= 0");
  double wsum = 0.0;
  for (const auto& [kind, w] : move_weights) {
    if (w < 0.0) throw Error(ErrorCode::InvalidInput, "move weights must be >= 0");
    wsum += w;
  }
  if (wsum <= 0.0) throw Error(ErrorCode::InvalidInput, "at least one move weight must be positive");
  if (L >= length_capacity())
    throw Error(ErrorCode::InfeasibleLength,
                "L exceeds the length capacity of the grid (" + format_double(length_capacity()) + ")");
}

namespace {

// longest chord of the domain through `c` along direction `dir`
Segment chord_through(const DomainSpec& domain, Point2 c, Point2 dir) {
  auto ray_hit = [&](Point2 d) {
    double lo = 0.0, hi = 1.0;
    const BBox bb = domain.bounding_box();
    const double span = 2.0 * std::max(bb.hi.x - bb.lo.x, bb.hi.y - bb.lo.y);
    hi = span;
    for (int it = 0; it < 60; ++it) {
      const double mid = (lo + hi) / 2.0;
      if (domain.contains_closed({c.x + d.x * mid, c.y + d.y * mid}, 1e-12))
        lo = mid;
      else
        hi = mid;
    }
    return lo;
  };
  const double tp = ray_hit(dir);
  const double tm = ray_hit({-dir.x, -dir.y});
  return {{c.x - dir.x * tm, c.y - dir.y * tm}, {c.x + dir.x * tp, c.y + dir.y * tp}};
}

}  // namespace

CurveNetwork initial_guess(const DomainSpec& domain, double L, std::uint64_t seed) {
  domain.validate();
  if (L <= 0.0) throw Error(ErrorCode::InfeasibleLength, "L must be positive");
  const BBox bb = domain.bounding_box();
  const Point2 c = domain.centroid();
  // bounding-box alignment; ties take the x axis
  const Point2 dir = (bb.hi.x - bb.lo.x) >= (bb.hi.y - bb.lo.y) ? Point2{1.0, 0.0} : Point2{0.0, 1.0};
  const Segment chord = chord_through(domain, c, dir);
  const double chord_len = chord.length();

  CurveNetwork net;
  net.tolerance = 1e-9;
  if (L <= chord_len) {
    const Point2 mid = (chord.a + chord.b) * 0.5;
    const Point2 u = (chord.b - chord.a) * (1.0 / chord_len);
    net.vertices = {mid - u * (L / 2.0), mid + u * (L / 2.0)};
    net.edges = {{0, 1}};
    return net;
  }
  net.vertices = {chord.a, chord.b};
  net.edges = {{0, 1}};
  return enlarge_to_length(net, domain, L, seed);
}

namespace {

std::vector<int> leaf_vertices(const CurveNetwork& net) {
  const auto deg = net.vertex_degrees();
  std::vector<int> leaves;
  for (std::size_t v = 0; v < deg.size(); ++v)
    if (deg[v] == 1) leaves.push_back(static_cast<int>(v));
  return leaves;
}

// edge erasure strands leaf tips; they must not count against connectivity
CurveNetwork drop_isolated_vertices(const CurveNetwork& net) {
  if (net.edges.empty()) return net;
  const auto deg = net.vertex_degrees();
  CurveNetwork out;
  out.tolerance = net.tolerance;
  std::vector<int> remap(net.vertices.size(), -1);
  for (std::size_t v = 0; v < net.vertices.size(); ++v)
    if (deg[v] > 0) {
      remap[v] = static_cast<int>(out.vertices.size());
      out.vertices.push_back(net.vertices[v]);
    }
  for (const auto& e : net.edges) out.edges.push_back({remap[e[0]], remap[e[1]]});
  return out;
}

// Trim `excess` length off degree-1 spurs, longest leaf edge first.
CurveNetwork trim_spurs(CurveNetwork net, double excess, double weld_eps) {
  while (excess > 0.0) {
    const auto deg = net.vertex_degrees();
    int best_edge = -1;
    int leaf_end = -1;
    double best_len = 0.0;
    for (std::size_t e = 0; e < net.edges.size(); ++e) {
      for (int side = 0; side < 2; ++side) {
        const int v = net.edges[e][side];
        if (deg[v] != 1) continue;
        const double len = net.segment(e).length();
        if (len > best_len) {
          best_len = len;
          best_edge = static_cast<int>(e);
          leaf_end = side;
        }
      }
    }
    if (best_edge < 0) break;  // no leaves left
    const int vleaf = net.edges[best_edge][leaf_end];
    const int vroot = net.edges[best_edge][1 - leaf_end];
    if (best_len <= excess + weld_eps && net.edges.size() > 1) {
      excess -= best_len;
      net.edges.erase(net.edges.begin() + best_edge);
      (void)vleaf;
      net = drop_isolated_vertices(net);
    } else {
      const double keep = std::max(best_len - excess, weld_eps);
      const Point2 root = net.vertices[vroot];
      const Point2 tip = net.vertices[vleaf];
      net.vertices[vleaf] = root + (tip - root) * (keep / best_len);
      excess = 0.0;
    }
    net = weld(net, weld_eps);
    if (excess <= 0.0) break;
  }
  return net;
}

Point2 length_weighted_centroid(const CurveNetwork& net) {
  double len = 0.0;
  Point2 c{0.0, 0.0};
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const Segment s = net.segment(e);
    const double l = s.length();
    const Point2 mid = (s.a + s.b) * 0.5;
    c = c + mid * l;
    len += l;
  }
  return len > 0.0 ? c * (1.0 / len) : c;
}

}  // namespace

CurveNetwork repair(const CurveNetwork& net, const DomainSpec& domain, double L, double length_tol,
                    double grid_h, std::uint64_t seed) {
  CurveNetwork cur = net;
  const double weld_eps = 1e-9 * std::max(1.0, L);
  for (auto& v : cur.vertices) v = domain.clamp(v);
  cur = drop_isolated_vertices(weld(cur, weld_eps));
  if (cur.vertices.empty() || !cur.connected())
    throw Error(ErrorCode::RepairFailed, "candidate is not connected");

  for (int pass = 0; pass < 8; ++pass) {
    const double len = total_length(cur);
    if (std::abs(len - L) <= length_tol) {
      cur.tolerance = net.tolerance;
      return cur;
    }
    if (len < L) {
      CurveNetwork grown = cur;
      grown.tolerance = std::min(length_tol, 0.5 * (L - len));
      cur = enlarge_to_length(grown, domain, L, seed ^ (0x9e3779b97f4a7c15ull + pass), grid_h);
      cur.tolerance = net.tolerance;
      continue;
    }
    // too long: spurs first, then uniform scaling toward the centroid
    cur = trim_spurs(cur, len - L, weld_eps);
    const double after = total_length(cur);
    if (after > L + length_tol) {
      const double s = L / after;
      const Point2 c = length_weighted_centroid(cur);
      for (auto& v : cur.vertices) v = c + (v - c) * s;
      for (auto& v : cur.vertices) v = domain.clamp(v);
      cur = weld(cur, weld_eps);
      if (!cur.connected()) throw Error(ErrorCode::RepairFailed, "scaling broke connectivity");
    }
  }
  if (std::abs(total_length(cur) - L) > length_tol)
    throw Error(ErrorCode::RepairFailed, "length constraint not restored");
  return cur;
}

CurveNetwork propose(const CurveNetwork& current, const OptConfig& config, MoveKind move,
                     std::uint64_t iteration_seed) {
  std::mt19937_64 rng(iteration_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double h = config.grid_h;
  const double scale = config.perturb_scale > 0.0 ? config.perturb_scale : 2.0 * h;
  CurveNetwork cand = current;

  switch (move) {
    case MoveKind::PerturbVertex: {
      if (cand.vertices.empty()) throw Error(ErrorCode::MoveInapplicable, "no vertices");
      std::normal_distribution<double> gauss(0.0, scale);
      const int v = static_cast<int>(unit(rng) * cand.vertices.size()) % cand.vertices.size();
      cand.vertices[v] = config.domain.clamp(
          {cand.vertices[v].x + gauss(rng), cand.vertices[v].y + gauss(rng)});
      return cand;
    }
    case MoveKind::SplitEdge: {
      if (cand.edges.empty()) throw Error(ErrorCode::MoveInapplicable, "no edges");
      const int e = static_cast<int>(unit(rng) * cand.edges.size()) % cand.edges.size();
      const Segment s = cand.segment(e);
      const double t = 0.3 + 0.4 * unit(rng);
      const int mid = static_cast<int>(cand.vertices.size());
      cand.vertices.push_back(s.a + (s.b - s.a) * t);
      const int b = cand.edges[e][1];
      cand.edges[e][1] = mid;
      cand.edges.push_back({mid, b});
      return cand;
    }
    case MoveKind::SlideBranch: {
      const auto leaves = leaf_vertices(cand);
      if (leaves.empty()) throw Error(ErrorCode::MoveInapplicable, "no degree-1 vertex");
      const int v = leaves[static_cast<int>(unit(rng) * leaves.size()) % leaves.size()];
      int anchor = -1;
      for (const auto& e : cand.edges)
        if (e[0] == v || e[1] == v) {
          anchor = e[0] == v ? e[1] : e[0];
          break;
        }
      const Point2 a = cand.vertices[anchor], tip = cand.vertices[v];
      const double ang = std::atan2(tip.y - a.y, tip.x - a.x);
      const double len = dist(a, tip);
      std::normal_distribution<double> dtheta(0.0, 0.35);
      const double na = ang + dtheta(rng);
      cand.vertices[v] = config.domain.clamp({a.x + len * std::cos(na), a.y + len * std::sin(na)});
      return cand;
    }
    case MoveKind::BallSurgery: {
      if (cand.vertices.empty()) throw Error(ErrorCode::MoveInapplicable, "no vertices");
      const double diam = cand.diameter();
      const double r0 = diam / 2.0;
      if (r0 <= h) throw Error(ErrorCode::MoveInapplicable, "network too small for surgery");
      const int v = static_cast<int>(unit(rng) * cand.vertices.size()) % cand.vertices.size();
      const double r = h + unit(rng) * (std::min(r0, 0.35 * diam) - h);
      try {
        return ball_surgery(cand, Ball{cand.vertices[v], r}, config.surgery_arcs);
      } catch (const Error&) {
        throw Error(ErrorCode::MoveInapplicable, "surgery rejected");
      }
    }
    case MoveKind::EnlargeSpur: {
      const double len = total_length(cand);
      const double extra = (0.05 + 0.10 * unit(rng)) * config.L;
      try {
        CurveNetwork grown = cand;
        grown.tolerance = 1e-9;
        return enlarge_to_length(grown, config.domain, len + extra, rng(), config.grid_h);
      } catch (const Error&) {
        throw Error(ErrorCode::MoveInapplicable, "no room for a spur");
      }
    }
    case MoveKind::PruneSpur: {
      const auto leaves = leaf_vertices(cand);
      if (leaves.empty() || cand.edges.size() < 2)
        throw Error(ErrorCode::MoveInapplicable, "nothing to prune");
      const int v = leaves[static_cast<int>(unit(rng) * leaves.size()) % leaves.size()];
      for (std::size_t e = 0; e < cand.edges.size(); ++e)
        if (cand.edges[e][0] == v || cand.edges[e][1] == v) {
          const double frac = 0.4 + 0.6 * unit(rng);
          const int root = cand.edges[e][0] == v ? cand.edges[e][1] : cand.edges[e][0];
          if (frac >= 0.95) {
            cand.edges.erase(cand.edges.begin() + e);
            cand = drop_isolated_vertices(cand);
          } else {
            const Point2 rp = cand.vertices[root], tip = cand.vertices[v];
            cand.vertices[v] = rp + (tip - rp) * (1.0 - frac);
          }
          break;
        }
      cand = weld(cand, 1e-9);
      if (!cand.connected()) throw Error(ErrorCode::MoveInapplicable, "prune disconnected the net");
      return cand;
    }
  }
  throw Error(ErrorCode::MoveInapplicable, "unknown move");
}

namespace {

// geometric hash at resolution h/4 for the rasterization cache
std::uint64_t geometry_hash(const CurveNetwork& net, double h) {
  const double q = h / 4.0;
  std::uint64_t hsh = 1469598103934665603ull;
  auto feed = [&hsh](std::int64_t v) {
    for (int b = 0; b < 8; ++b) {
      hsh ^= static_cast<std::uint64_t>(v >> (8 * b)) & 0xff;
      hsh *= 1099511628211ull;
    }
  };
  for (const auto& v : net.vertices) {
    feed(static_cast<std::int64_t>(std::llround(v.x / q)));
    feed(static_cast<std::int64_t>(std::llround(v.y / q)));
  }
  for (const auto& e : net.edges) {
    feed(e[0]);
    feed(e[1]);
  }
  return hsh;
}

}  // namespace

OptResult minimize(const OptConfig& config) {
  config.validate();
  OptResult result;

  std::vector<MoveKind> kinds;
  std::vector<double> weights;
  for (const auto& [kind, w] : config.move_weights)
    if (w > 0.0) {
      kinds.push_back(kind);
      weights.push_back(w);
    }

  CurveNetwork current = initial_guess(config.domain, config.L, config.seed);
  current = repair(current, config.domain, config.L, config.length_tol, config.grid_h, config.seed);

  std::unordered_map<std::uint64_t, double> cache;
  auto objective = [&](const CurveNetwork& net) {
    const std::uint64_t key = geometry_hash(net, config.grid_h);
    if (auto it = cache.find(key); it != cache.end()) {
      ++result.cache_hits;
      return it->second;
    }
    const auto grid = rasterize(config.domain, &net, config.grid_h);
    const OpenRegion region = components(grid);
    const double value = evaluate(config.functional, region, config.coeff, config.solver);
    cache.emplace(key, value);
    ++result.evaluations;
    return value;
  };

  double cur_value = objective(current);
  result.best = current;
  result.best_value = cur_value;

  const double t0 = config.t0 > 0.0 ? config.t0 : 0.02 * std::max(std::abs(cur_value), 1e-12);
  const double cooling = config.cooling > 0.0
                             ? config.cooling
                             : std::exp(std::log(1e-3) / std::max(config.iterations, 1));

  std::mt19937_64 rng(config.seed * 0x2545f4914f6cdd1dull + 0x9e3779b97f4a7c15ull);
  std::discrete_distribution<int> pick_move(weights.begin(), weights.end());
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double temp = t0;
  for (int iter = 0; iter < config.iterations; ++iter) {
    MoveKind move = kinds[pick_move(rng)];
    TraceRow row;
    row.iter = iter;
    row.move = move;
    bool have_candidate = false;
    CurveNetwork candidate;
    for (int attempt = 0; attempt < 4 && !have_candidate; ++attempt) {
      try {
        candidate = propose(current, config, move, rng());
        candidate = repair(candidate, config.domain, config.L, config.length_tol, config.grid_h,
                           rng());
        have_candidate = true;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::MoveInapplicable && e.code() != ErrorCode::RepairFailed &&
            e.code() != ErrorCode::NoRoom && e.code() != ErrorCode::TargetTooSmall)
          throw;
        move = kinds[pick_move(rng)];
        row.move = move;
      }
    }
    if (!have_candidate) {
      row.value = cur_value;
      row.length = total_length(current);
      row.accepted = false;
      result.trace.push_back(row);
      temp *= cooling;
      continue;
    }

    const double cand_value = objective(candidate);
    const double delta = cand_value - cur_value;
    const bool accept = delta <= 0.0 || unit(rng) < std::exp(-delta / std::max(temp, 1e-300));
    if (accept) {
      current = std::move(candidate);
      cur_value = cand_value;
      if (cand_value < result.best_value) {
        result.best_value = cand_value;
        result.best = current;
      }
    }
    row.value = cur_value;
    row.length = total_length(current);
    row.accepted = accept;
    result.trace.push_back(row);
    temp *= cooling;
  }

  // minimizer audit hook: density profiles at every vertex for r in
  // [8h, diam/2], geometric ladder
  const double diam = result.best.diameter();
  std::vector<double> radii;
  for (double r = diam / 2.0; r >= 8.0 * config.grid_h; r /= 1.5) radii.push_back(r);
  if (radii.empty()) radii.push_back(diam / 2.0);
  result.audit =
      ahlfors_profile(result.best, nullptr, radii, 1.0, 2.0 * M_PI, config.grid_h);
  return result;
}

std::string trace_csv(const std::vector<TraceRow>& trace) {
  std::ostringstream os;
  os << "iter,move,value,length,accepted\n";
  for (const auto& row : trace)
    os << row.iter << ',' << to_string(row.move) << ',' << format_double(row.value) << ','
       << format_double(row.length) << ',' << (row.accepted ? 1 : 0) << '\n';
  return os.str();
}

}  // namespace maxshape
