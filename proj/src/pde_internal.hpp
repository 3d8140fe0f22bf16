#pragma once

#include <Eigen/Sparse>
#include <vector>

#include "maxshape/pde.hpp"

namespace maxshape::detail {

// Symmetric 5-point system for -div(σ∇u) + V u against mass ρ on a set of
// free nodes (Dirichlet data on everything else). Face conductivities use the
// harmonic mean of the nodal σ values.
struct StencilSystem {
  Eigen::SparseMatrix<double> A;  // stiffness + potential
  Eigen::VectorXd mass;           // diagonal of M (ρ per node)
  std::vector<int> nodes;         // grid node index per row
};

StencilSystem assemble(const Grid& grid, const std::vector<int>& nodes, const Coefficients& coeff);

// Lowest k eigenpairs of A u = λ M u by shift-invert (block inverse iteration
// with full reorthogonalization and Rayleigh-Ritz); CG inner solves.
Spectrum lowest_eigenpairs(const StencilSystem& sys, int k, const SolverOptions& opts);

}  // namespace maxshape::detail
