#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <algorithm>
#include <cmath>
#include <random>

#include "pde_internal.hpp"

namespace maxshape::detail {

namespace {

Spectrum dense_eigenpairs(const StencilSystem& sys, int k) {
  const Eigen::MatrixXd A = Eigen::MatrixXd(sys.A);
  const Eigen::MatrixXd M = sys.mass.asDiagonal();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(A, M);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::SolverDiverged, "dense eigensolver failed");
  Spectrum out;
  for (int j = 0; j < k; ++j) {
    const double lam = es.eigenvalues()[j];
    const Eigen::VectorXd x = es.eigenvectors().col(j);
    const double res = (A * x - lam * sys.mass.cwiseProduct(x).matrix()).norm() /
                       (std::max(lam, 1e-300) * x.norm());
    out.values.push_back(lam);
    out.residuals.push_back(res);
  }
  return out;
}

}  // namespace

Spectrum lowest_eigenpairs(const StencilSystem& sys, int k, const SolverOptions& opts) {
  const int n = static_cast<int>(sys.nodes.size());
  if (k < 1 || k > n) throw Error(ErrorCode::NotEnoughModes, "subspace larger than system");
  if (n <= 256 || k >= n - 2) return dense_eigenpairs(sys, std::min(k, n));

  const int m = std::min(n, k + 3);

  // deterministic seeded start block
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd X(n, m);
  for (int c = 0; c < m; ++c)
    for (int r = 0; r < n; ++r) X(r, c) = gauss(rng);

  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
  cg.setMaxIterations(opts.max_cg_iters);
  cg.setTolerance(std::max(1e-13, opts.eig_tol * 1e-4));
  cg.compute(sys.A);

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(m);
  Eigen::MatrixXd Y(n, m);
  bool have_guess = false;
  for (int outer = 0; outer < opts.max_eig_iters; ++outer) {
    // shift-invert application Y = A^{ -1} M X, column by column
    for (int c = 0; c < m; ++c) {
      const Eigen::VectorXd rhs = sys.mass.cwiseProduct(X.col(c).array().matrix());
      if (have_guess && theta[c] > 0.0) {
        Y.col(c) = cg.solveWithGuess(rhs, Eigen::VectorXd(X.col(c) / theta[c]));
      } else {
        Y.col(c) = cg.solve(rhs);
      }
      if (cg.info() == Eigen::NumericalIssue)
        throw Error(ErrorCode::SolverDiverged, "inner CG failed");
    }

    // full reorthogonalization in the M inner product (symmetric whitening)
    Eigen::MatrixXd G = Y.transpose() * sys.mass.asDiagonal() * Y;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gw(G);
    Eigen::VectorXd d = gw.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd Z = Y * gw.eigenvectors() * d.asDiagonal() * gw.eigenvectors().transpose();

    // Rayleigh-Ritz
    Eigen::MatrixXd H = Z.transpose() * (sys.A * Z);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rr((H + H.transpose()) / 2.0);
    X = Z * rr.eigenvectors();
    theta = rr.eigenvalues();
    have_guess = true;

    bool converged = true;
    for (int j = 0; j < k && converged; ++j) {
      const Eigen::VectorXd x = X.col(j);
      const double res = (sys.A * x - theta[j] * sys.mass.cwiseProduct(x).matrix()).norm() /
                         (std::max(theta[j], 1e-300) * x.norm());
      if (res > opts.eig_tol) converged = false;
    }
    if (converged) break;
    if (outer + 1 == opts.max_eig_iters)
      throw Error(ErrorCode::SolverDiverged, "eigenvalue iteration did not converge");
  }

  Spectrum out;
  for (int j = 0; j < k; ++j) {
    const Eigen::VectorXd x = X.col(j);
    const double res = (sys.A * x - theta[j] * sys.mass.cwiseProduct(x).matrix()).norm() /
                       (std::max(theta[j], 1e-300) * x.norm());
    out.values.push_back(theta[j]);
    out.residuals.push_back(res);
  }
  return out;
}

}  // namespace maxshape::detail
