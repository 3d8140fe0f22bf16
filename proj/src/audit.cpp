#include "maxshape/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace maxshape {

AhlforsReport ahlfors_profile(const CurveNetwork& net, const std::vector<Point2>* points,
                              const std::vector<double>& radii, double c1, double c2,
                              double slack_h) {
  AhlforsReport rep;
  rep.c1 = c1;
  rep.c2 = c2;
  rep.slack_h = slack_h;
  rep.worst_c1 = std::numeric_limits<double>::max();
  rep.worst_c2 = 0.0;
  rep.all_pass = true;

  std::vector<double> rs = radii;
  std::sort(rs.begin(), rs.end(), std::greater<double>());
  const std::vector<Point2>& pts = points ? *points : net.vertices;

  int id = 0;
  for (const Point2& x : pts) {
    DensityProfile prof;
    prof.point_id = id++;
    prof.base_point = x;
    for (double r : rs) {
      if (r <= 0.0) continue;
      const double density = length_in_ball(net, Ball{x, r}) / r;
      const double slack = slack_h > 0.0 ? 3.0 * slack_h / r : 0.0;
      const bool ok = density >= c1 - slack && density <= c2 + slack;
      prof.radii.push_back(r);
      prof.densities.push_back(density);
      prof.flags.push_back(ok);
      rep.worst_c1 = std::min(rep.worst_c1, density);
      rep.worst_c2 = std::max(rep.worst_c2, density);
      if (!ok) rep.all_pass = false;
    }
    rep.profiles.push_back(std::move(prof));
  }
  return rep;
}

GolabReport golab_check(const std::vector<CurveNetwork>& sequence, const CurveNetwork& limit,
                        double tol) {
  if (sequence.empty()) throw Error(ErrorCode::EmptySet, "empty sequence");
  GolabReport rep;
  rep.limit_length = total_length(limit);
  for (const auto& net : sequence) {
    rep.distances.push_back(hausdorff_distance(net, limit));
    rep.lengths.push_back(total_length(net));
  }
  rep.converging = true;
  for (std::size_t i = 1; i < rep.distances.size(); ++i)
    if (rep.distances[i] > rep.distances[i - 1] + tol) rep.converging = false;
  if (!rep.converging) throw Error(ErrorCode::NotConverging, "Hausdorff distances do not decrease");

  const std::size_t tail = (sequence.size() + 1) / 2;
  rep.min_tail_length = std::numeric_limits<double>::max();
  for (std::size_t i = sequence.size() - tail; i < sequence.size(); ++i)
    rep.min_tail_length = std::min(rep.min_tail_length, rep.lengths[i]);
  rep.lsc_pass = rep.min_tail_length >= rep.limit_length - tol;
  return rep;
}

MonotoneUnionReport monotone_union_check(const DomainSpec& domain,
                                         const std::vector<CurveNetwork>& shrinking_nets,
                                         double tol) {
  if (shrinking_nets.size() < 2) throw Error(ErrorCode::InvalidInput, "need at least two sets");
  // closed complements: Σ_n ∪ ∂Ω as one sampled point set
  auto with_boundary = [&](const CurveNetwork& net) {
    CurveNetwork out = net;
    const int base = static_cast<int>(out.vertices.size());
    const int n = static_cast<int>(domain.boundary.size());
    for (const auto& p : domain.boundary) out.vertices.push_back(p);
    for (int i = 0; i < n; ++i) out.edges.push_back({base + i, base + (i + 1) % n});
    return out;
  };
  MonotoneUnionReport rep;
  const CurveNetwork last = with_boundary(shrinking_nets.back());
  for (const auto& net : shrinking_nets) rep.distances.push_back(hausdorff_distance(with_boundary(net), last));
  rep.pass = true;
  for (std::size_t i = 1; i < rep.distances.size(); ++i)
    if (rep.distances[i] > rep.distances[i - 1] + tol) rep.pass = false;
  if (rep.distances.back() > tol) rep.pass = false;
  return rep;
}

GolabNegativeControl golab_negative_control(int n_points) {
  GolabNegativeControl ctl;
  CurveNetwork family;
  for (int j = 1; j <= n_points; ++j)
    family.vertices.push_back({static_cast<double>(j) / n_points, 0.0});
  ctl.family_length = total_length(family);
  try {
    family.validate();  // disconnected point dust must be rejected
  } catch (const Error& e) {
    ctl.family_rejected = e.code() == ErrorCode::InvalidInput;
  }
  return ctl;
}

CurveNetwork figure1_left() {
  CurveNetwork net;
  net.tolerance = 1e-4;
  net.vertices.push_back({0.0, 0.0});
  for (double deg : {45.0, 135.0, 270.0}) {
    const double th = deg * M_PI / 180.0;
    net.vertices.push_back({std::cos(th), std::sin(th)});
  }
  net.edges = {{0, 1}, {0, 2}, {0, 3}};
  return net;
}

CurveNetwork figure1_right(int depth, bool tail_compensated) {
  if (depth < 0) throw Error(ErrorCode::InvalidInput, "depth must be >= 0");
  CurveNetwork net;
  net.tolerance = 1e-4;
  net.vertices.push_back({0.0, 0.0});
  auto add_radius = [&](double len, double angle) {
    const int idx = static_cast<int>(net.vertices.size());
    net.vertices.push_back({len * std::cos(angle), len * std::sin(angle)});
    net.edges.push_back({0, idx});
  };
  for (int j = 0; j <= depth; ++j) add_radius(std::pow(2.0, -j), M_PI / (j + 1));
  if (tail_compensated) add_radius(std::pow(2.0, -depth), M_PI / (depth + 2));
  return net;
}

std::map<std::string, CurveNetwork> builtin_fixtures(int right_depth) {
  return {
      {"figure1_left", figure1_left()},
      {"figure1_right", figure1_right(right_depth, false)},
      {"figure1_right_tail", figure1_right(right_depth, true)},
  };
}

}  // namespace maxshape
