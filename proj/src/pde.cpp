#include "maxshape/pde.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <algorithm>
#include <cmath>
#include <limits>

#include "pde_internal.hpp"

namespace maxshape {

Coefficients Coefficients::constant(double s, double r, double v) {
  Coefficients c;
  c.sigma = [s](Point2) { return s; };
  c.rho = [r](Point2) { return r; };
  c.potential = [v](Point2) { return v; };
  c.sigma1 = c.sigma2 = s;
  c.rho1 = c.rho2 = r;
  c.V2 = v;
  return c;
}

void Coefficients::validate() const {
  if (!(sigma1 > 0.0) || !(sigma1 <= sigma2))
    throw Error(ErrorCode::InvalidInput, "need 0 < sigma1 <= sigma2");
  if (!(rho1 > 0.0) || !(rho1 <= rho2)) throw Error(ErrorCode::InvalidInput, "need 0 < rho1 <= rho2");
  if (V2 < 0.0) throw Error(ErrorCode::InvalidInput, "need V2 >= 0");
}

double conjugate_exponent(double p) {
  if (p < 2.0) return 2.0 * p / (2.0 - p);
  return std::numeric_limits<double>::infinity();
}

namespace detail {

StencilSystem assemble(const Grid& grid, const std::vector<int>& nodes, const Coefficients& coeff) {
  StencilSystem sys;
  sys.nodes = nodes;
  const int n = static_cast<int>(nodes.size());
  std::vector<int> row_of(grid.node_count(), -1);
  for (int r = 0; r < n; ++r) row_of[nodes[r]] = r;

  const double h2 = grid.h * grid.h;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(5 * static_cast<std::size_t>(n));
  sys.mass.resize(n);
  for (int r = 0; r < n; ++r) {
    const int v = nodes[r];
    const int i = v % grid.nx, j = v / grid.nx;
    const Point2 p = grid.node_point(i, j);
    const double sig_p = coeff.sigma(p);
    double diag = coeff.potential(p);
    const int nb[4] = {i > 0 ? v - 1 : -1, i + 1 < grid.nx ? v + 1 : -1, j > 0 ? v - grid.nx : -1,
                       j + 1 < grid.ny ? v + grid.nx : -1};
    for (int w : nb) {
      if (w < 0) continue;
      const double sig_w = coeff.sigma(grid.node_point(w));
      const double face = 2.0 * sig_p * sig_w / (sig_p + sig_w);
      diag += face / h2;
      const int rw = row_of[w];
      if (rw >= 0) trip.emplace_back(r, rw, -face / h2);
    }
    trip.emplace_back(r, r, diag);
    sys.mass[r] = coeff.rho(p);
  }
  sys.A.resize(n, n);
  sys.A.setFromTriplets(trip.begin(), trip.end());
  return sys;
}

}  // namespace detail

TorsionSolution solve_torsion(const OpenRegion& region, const SolverOptions& opts) {
  TorsionSolution sol;
  const Grid& g = *region.grid;
  sol.w.assign(g.node_count(), 0.0);
  if (region.empty()) return sol;

  const auto sys = detail::assemble(g, region.free_nodes, Coefficients::laplacian());
  const int n = static_cast<int>(region.free_nodes.size());
  Eigen::VectorXd rhs = Eigen::VectorXd::Ones(n);

  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
  cg.setMaxIterations(opts.max_cg_iters);
  cg.setTolerance(std::max(1e-13, opts.pde_tol * 1e-2));
  cg.compute(sys.A);
  Eigen::VectorXd u = cg.solve(rhs);
  if (cg.info() != Eigen::Success)
    throw Error(ErrorCode::SolverDiverged, "torsion CG did not converge");

  int arg = region.free_nodes.front();
  for (int r = 0; r < n; ++r) {
    sol.w[region.free_nodes[r]] = u[r];
    if (u[r] > sol.max_value) {
      sol.max_value = u[r];
      arg = region.free_nodes[r];
    }
    sol.l1_value += u[r];
  }
  sol.l1_value *= g.h * g.h;
  sol.max_location = g.node_point(arg);

  for (int r = 0; r < n; ++r) {
    const int v = region.free_nodes[r];
    const int i = v % g.nx, j = v / g.nx;
    const double e = i + 1 < g.nx ? sol.w[v + 1] : 0.0;
    const double w_ = i > 0 ? sol.w[v - 1] : 0.0;
    const double no = j + 1 < g.ny ? sol.w[v + g.nx] : 0.0;
    const double so = j > 0 ? sol.w[v - g.nx] : 0.0;
    const double gx = (e - w_) / (2.0 * g.h), gy = (no - so) / (2.0 * g.h);
    sol.grad_max = std::max(sol.grad_max, std::hypot(gx, gy));
  }
  return sol;
}

namespace {

Spectrum merge_spectra(std::vector<Spectrum> parts, int k) {
  std::vector<std::pair<double, double>> all;
  for (const auto& s : parts)
    for (std::size_t i = 0; i < s.values.size(); ++i) all.emplace_back(s.values[i], s.residuals[i]);
  std::sort(all.begin(), all.end());
  Spectrum out;
  for (int i = 0; i < k && i < static_cast<int>(all.size()); ++i) {
    out.values.push_back(all[i].first);
    out.residuals.push_back(all[i].second);
  }
  return out;
}

}  // namespace

Spectrum eigenvalues(const OpenRegion& region, const Coefficients& coeff, int k,
                     const SolverOptions& opts) {
  if (k < 1) throw Error(ErrorCode::InvalidInput, "need k >= 1");
  coeff.validate();
  if (static_cast<int>(region.size()) < k)
    throw Error(ErrorCode::NotEnoughModes, "fewer free nodes than requested eigenvalues");
  std::vector<Spectrum> parts;
  for (const auto& comp : region.components) {
    const int kc = std::min<int>(k, static_cast<int>(comp.size()));
    parts.push_back(detail::lowest_eigenpairs(detail::assemble(*region.grid, comp, coeff), kc, opts));
  }
  return merge_spectra(std::move(parts), k);
}

Spectrum eigenvalues_direct(const OpenRegion& region, const Coefficients& coeff, int k,
                            const SolverOptions& opts) {
  if (k < 1) throw Error(ErrorCode::InvalidInput, "need k >= 1");
  coeff.validate();
  if (static_cast<int>(region.size()) < k)
    throw Error(ErrorCode::NotEnoughModes, "fewer free nodes than requested eigenvalues");
  return detail::lowest_eigenpairs(detail::assemble(*region.grid, region.free_nodes, coeff), k, opts);
}

EdeReport ede_bounds_check(const OpenRegion& region, const Coefficients& coeff, int k,
                           const SolverOptions& opts) {
  EdeReport rep;
  rep.weighted = eigenvalues(region, coeff, k, opts);
  rep.dirichlet = eigenvalues(region, Coefficients::laplacian(), k, opts);
  rep.pass = true;
  for (std::size_t j = 0; j < rep.weighted.values.size(); ++j) {
    const double lam = rep.weighted.values[j], lamD = rep.dirichlet.values[j];
    const double lo = coeff.sigma1 / coeff.rho2 * lamD;
    const double hi = coeff.sigma2 / coeff.rho1 * lamD + coeff.V2 / coeff.rho1;
    rep.lower_margin.push_back(lam - lo);
    rep.upper_margin.push_back(hi - lam);
    const double slack = 10.0 * opts.eig_tol * std::max(1.0, lam);
    if (lam - lo < -slack || hi - lam < -slack) rep.pass = false;
  }
  return rep;
}

}  // namespace maxshape
