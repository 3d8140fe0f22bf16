#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "maxshape/grid.hpp"

namespace maxshape {

// Scalar isotropic coefficient fields with their uniform bounds.
struct Coefficients {
  std::function<double(Point2)> sigma = [](Point2) { return 1.0; };
  std::function<double(Point2)> rho = [](Point2) { return 1.0; };
  std::function<double(Point2)> potential = [](Point2) { return 0.0; };
  double sigma1 = 1.0, sigma2 = 1.0;
  double rho1 = 1.0, rho2 = 1.0;
  double V2 = 0.0;

  static Coefficients laplacian() { return Coefficients{}; }
  static Coefficients constant(double s, double r, double v);
  void validate() const;
};

struct SolverOptions {
  double pde_tol = 1e-8;  // relative CG residual bound for linear solves
  double eig_tol = 1e-6;  // relative eigenpair residual
  double ps_tol = 1e-5;   // relative change stop for the Rayleigh ascent
  double eps_reg = 1e-10; // |∇u|^{p-2} regularization
  int max_cg_iters = 20000;
  int max_eig_iters = 400;
  int max_ps_iters = 40000;
  std::uint64_t seed = 0x5eed;
};

struct TorsionSolution {
  std::vector<double> w;   // per grid node; zero off the region
  double max_value = 0.0;  // M
  Point2 max_location{};
  double l1_value = 0.0;   // T = h^2 Σ w
  double grad_max = 0.0;   // τ, max central-difference gradient magnitude
};

struct Spectrum {
  std::vector<double> values;     // ascending
  std::vector<double> residuals;  // per eigenpair, relative
};

// -Δw = 1 on the region, w = 0 on Dirichlet nodes; one linear system over the
// whole node mask (no component decomposition).
TorsionSolution solve_torsion(const OpenRegion& region, const SolverOptions& opts = {});

// Lowest k eigenvalues of -div(σ∇u) + V u = λ ρ u with Dirichlet data:
// solved per connected component, merged ascending, truncated to k.
Spectrum eigenvalues(const OpenRegion& region, const Coefficients& coeff, int k,
                     const SolverOptions& opts = {});

// Single eigensolve over the whole mask (no decomposition); used by the
// maxitivity checks as the direct union evaluation.
Spectrum eigenvalues_direct(const OpenRegion& region, const Coefficients& coeff, int k,
                            const SolverOptions& opts = {});

// Best constant of the W^{1,p} -> L^q embedding, componentwise max.
// p = q = 2 reduces to 1/λ1 of the Dirichlet Laplacian.
double poincare_sobolev(const OpenRegion& region, double p, double q,
                        const SolverOptions& opts = {});
double poincare_sobolev_direct(const OpenRegion& region, double p, double q,
                               const SolverOptions& opts = {});

struct EdeReport {
  Spectrum weighted;
  Spectrum dirichlet;
  std::vector<double> lower_margin;  // λ_j - (σ1/ρ2) λ_j^D
  std::vector<double> upper_margin;  // (σ2/ρ1) λ_j^D + V2/ρ1 - λ_j
  bool pass = false;
};

// Sandwich check (σ1/ρ2) λ_j^D ≤ λ_j ≤ (σ2/ρ1) λ_j^D + V2/ρ1 for j ≤ k.
EdeReport ede_bounds_check(const OpenRegion& region, const Coefficients& coeff, int k,
                           const SolverOptions& opts = {});

// Conjugate exponent p* (= 2p/(2-p) for p < 2, +inf otherwise).
double conjugate_exponent(double p);

}  // namespace maxshape
