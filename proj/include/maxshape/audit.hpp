#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maxshape/geometry.hpp"

namespace maxshape {

struct DensityProfile {
  int point_id = 0;
  Point2 base_point;
  std::vector<double> radii;      // strictly descending
  std::vector<double> densities;  // H^1(Σ ∩ B_r)/r
  std::vector<bool> flags;        // pass against [c1 - slack, c2 + slack]
};

struct AhlforsReport {
  std::vector<DensityProfile> profiles;
  double c1 = 1.0;
  double c2 = 2.0 * M_PI;
  double slack_h = 0.0;   // slack = 3*slack_h/r per radius; 0 disables slack
  double worst_c1 = 0.0;  // smallest density seen
  double worst_c2 = 0.0;  // largest density seen
  bool all_pass = false;
};

// Density profiles via exact ball clipping. Points defaults to all vertices;
// radii must stay below r0 = diam(net)/2.
AhlforsReport ahlfors_profile(const CurveNetwork& net,
                              const std::vector<Point2>* points,  // nullptr = all vertices
                              const std::vector<double>& radii, double c1 = 1.0,
                              double c2 = 2.0 * M_PI, double slack_h = 0.0);

struct GolabReport {
  std::vector<double> distances;  // d_H(Σ_n, limit)
  std::vector<double> lengths;    // H^1(Σ_n)
  double limit_length = 0.0;
  double min_tail_length = 0.0;  // min over the trailing half
  bool converging = false;       // distances decrease toward ~0
  bool lsc_pass = false;         // min tail length >= limit length - tol
};

// Lower-semicontinuity check along a Hausdorff-converging sequence.
// Throws NotConverging when the distances fail to decrease.
GolabReport golab_check(const std::vector<CurveNetwork>& sequence, const CurveNetwork& limit,
                        double tol = 1e-6);

struct MonotoneUnionReport {
  std::vector<double> distances;  // d_H(Σ_n ∪ ∂Ω, Σ_last ∪ ∂Ω)
  bool pass = false;              // distances decrease to ~0
};

// Nondecreasing open sets A_n = Ω \ Σ_n (networks shrink) Hausdorff-converge
// to their union; checked through the closed complements.
MonotoneUnionReport monotone_union_check(const DomainSpec& domain,
                                         const std::vector<CurveNetwork>& shrinking_nets,
                                         double tol = 1e-3);

// The connectedness counterexample: n isolated points on [0,1] converge to
// the unit segment while carrying zero length. The point family is rejected
// by network validation, which is the documented negative control.
struct GolabNegativeControl {
  double limit_length = 1.0;
  double family_length = 0.0;
  bool family_rejected = false;
};
GolabNegativeControl golab_negative_control(int n_points = 16);

// Figure-1 fixtures: the left continuum (three unit radii) is Ahlfors
// regular, the right one is not.
CurveNetwork figure1_left();
// Radii of length 2^-j at angle π/(j+1), j = 0..depth. With tail_compensated
// an extra radius of length 2^-depth stands in for the infinite tail, which
// makes the density at r = 2^-n equal (2+n) exactly.
CurveNetwork figure1_right(int depth, bool tail_compensated = false);

std::map<std::string, CurveNetwork> builtin_fixtures(int right_depth = 10);

}  // namespace maxshape
