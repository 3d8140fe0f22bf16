#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "maxshape/pde.hpp"

namespace maxshape {

enum class FunctionalKind {
  Inradius,
  TorsionMax,
  TorsionalRigidity,
  Eigenvalue,
  SpectralComposite,
  PoincareSobolev,
};

// Named evaluator F: OpenRegion -> [0, +inf]. Inradius, TorsionMax and
// PoincareSobolev are maxitive; TorsionalRigidity is additive; eigenvalue
// functionals use ordered-merge semantics across components.
struct SetFunctional {
  FunctionalKind kind = FunctionalKind::Inradius;
  int k = 1;                // Eigenvalue / SpectralComposite
  double p = 2.0, q = 2.0;  // PoincareSobolev
  std::function<double(std::span<const double>)> composite;
  double composite_empty = 0.0;
  std::string name = "Inradius";

  bool maxitive() const {
    return kind == FunctionalKind::Inradius || kind == FunctionalKind::TorsionMax ||
           kind == FunctionalKind::PoincareSobolev;
  }
  double empty_value() const;

  static SetFunctional inradius();
  static SetFunctional torsion_max();
  static SetFunctional torsional_rigidity();
  static SetFunctional eigenvalue(int k);
  static SetFunctional spectral_composite(int k, std::function<double(std::span<const double>)> f,
                                          double empty, std::string name);
  static SetFunctional composite_inv_lambda_k(int k);  // f = 1/λ_k
  static SetFunctional composite_sum_inv(int k);       // f = Σ 1/λ_j
  static SetFunctional poincare_sobolev(double p, double q);
};

// Componentwise evaluation: max for maxitive kinds, sum for the rigidity,
// ordered merge for spectra. Empty regions give empty_value().
double evaluate(const SetFunctional& F, const OpenRegion& region, const Coefficients& coeff = {},
                const SolverOptions& opts = {});

// Whole-mask evaluation without component decomposition (one solve).
double evaluate_direct(const SetFunctional& F, const OpenRegion& region,
                       const Coefficients& coeff = {}, const SolverOptions& opts = {});

struct MonotonicityReport {
  double value_small = 0.0, value_big = 0.0;
  double margin = 0.0;  // >= -tol means pass
  bool pass = false;
};
MonotonicityReport check_monotonicity(const SetFunctional& F, const OpenRegion& small,
                                      const OpenRegion& big, const Coefficients& coeff = {},
                                      const SolverOptions& opts = {}, double tol = 1e-9);

struct MaxitivityReport {
  double value_a = 0.0, value_b = 0.0;
  double union_value = 0.0;  // direct whole-grid evaluation
  double gap = 0.0;          // |union - max(parts)|
  bool pass = false;         // gap <= tolerance
  double tolerance = 0.0;
};
MaxitivityReport check_maxitivity(const SetFunctional& F, const OpenRegion& a, const OpenRegion& b,
                                  const Coefficients& coeff = {}, const SolverOptions& opts = {});

struct SigmaMaxitivityReport {
  std::vector<double> part_values;
  std::vector<double> prefix_union_values;  // F over growing prefix unions
  double union_value = 0.0;
  bool prefix_monotone = false;
  bool pass = false;
};
SigmaMaxitivityReport check_sigma_maxitivity(const SetFunctional& F,
                                             const std::vector<OpenRegion>& regions,
                                             const Coefficients& coeff = {},
                                             const SolverOptions& opts = {});

struct LocalMaxitivityReport {
  double r = 0.0;
  double value_without = 0.0;  // F(A_r(x))
  double value_with = 0.0;     // F(A_r(x) ∪ B_r^Ω(x))
  double gap = 0.0;
  double r_certified = 0.0;    // c1/c2 threshold (eigenvalue kinds only)
  double ball_lambda1 = 0.0;
  double region_lambda_k = 0.0;
  bool certified = false;  // r < r_certified
  bool pass = false;       // gap <= tol whenever certified
};
LocalMaxitivityReport check_local_maxitivity(const SetFunctional& F, const OpenRegion& region,
                                             Point2 x, double r, const Coefficients& coeff = {},
                                             const SolverOptions& opts = {});

struct BallLadderRow {
  double r = 0.0;
  double value = 0.0;
  double normalized = 0.0;  // value / expected rate
};
struct BallLadderReport {
  std::vector<BallLadderRow> rows;
  bool positive = false;   // F(B_r) > 0 for all r
  bool rate_match = false; // normalized values settle near a constant
};
// F on balls B_{r0 * 2^-i}; rates r (inradius), r^2/4 (torsion max),
// r^{2p/q+p-2} (Poincaré-Sobolev).
BallLadderReport check_positive_on_balls_and_shrinking(const SetFunctional& F, double r0,
                                                       int levels, double h_over_r = 1.0 / 64,
                                                       const SolverOptions& opts = {});

// c1, c2 of the certified local-maxitivity radius for Eigenvalue(k).
double certified_c1(const Coefficients& coeff);
double certified_c2(const Coefficients& coeff, int k, double inradius_of_region);

struct PropertyRecord {
  std::string check;
  std::string functional;
  std::string fixture;
  bool pass = false;
  double gap = 0.0;
  double tolerance = 0.0;
};

// The §3-axiom battery over the shipped fixture corpus.
std::vector<PropertyRecord> run_property_battery(const SolverOptions& opts = {});

}  // namespace maxshape
