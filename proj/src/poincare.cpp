#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <vector>

#include "pde_internal.hpp"

namespace maxshape {

namespace {

void check_exponents(double p, double q) {
  if (!(p > 1.0) || !(q >= p) || !(q < conjugate_exponent(p)))
    throw Error(ErrorCode::BadExponents, "need 1 < p <= q < p*");
}

// Rayleigh ascent for C_{p,q} on one node set.
// N(u) = h^2 Σ |u|^q, D(u) = h^2 Σ_cells (|∇u|^2 + ε)^{p/2}, maximize N^{p/q}/D
// with the gradient of the ratio, backtracking steps, and ‖u‖_q = 1.
double ascent_on_nodes(const Grid& g, const std::vector<int>& nodes, double p, double q,
                       const SolverOptions& opts) {
  const int n = static_cast<int>(nodes.size());
  std::unordered_map<int, int> row_of;
  row_of.reserve(nodes.size() * 2);
  for (int r = 0; r < n; ++r) row_of[nodes[r]] = r;

  // cells with at least one active corner; corners keep -1 for Dirichlet
  struct Cell {
    int c[4];  // rows of (i,j) (i+1,j) (i,j+1) (i+1,j+1), -1 if fixed
  };
  std::vector<Cell> cells;
  {
    std::vector<std::uint8_t> cell_seen(g.node_count(), 0);
    for (int r = 0; r < n; ++r) {
      const int v = nodes[r];
      const int i = v % g.nx, j = v / g.nx;
      for (int dj = -1; dj <= 0; ++dj)
        for (int di = -1; di <= 0; ++di) {
          const int ci = i + di, cj = j + dj;
          if (ci < 0 || cj < 0 || ci + 1 >= g.nx || cj + 1 >= g.ny) continue;
          const int cidx = g.index(ci, cj);
          if (cell_seen[cidx]) continue;
          cell_seen[cidx] = 1;
          Cell cell;
          const int corner[4] = {cidx, cidx + 1, cidx + g.nx, cidx + g.nx + 1};
          for (int t = 0; t < 4; ++t) {
            auto it = row_of.find(corner[t]);
            cell.c[t] = it == row_of.end() ? -1 : it->second;
          }
          cells.push_back(cell);
        }
    }
  }

  const double h = g.h, h2 = h * h;
  const double eps = opts.eps_reg;
  auto u_at = [](const std::vector<double>& u, int row) { return row < 0 ? 0.0 : u[row]; };

  auto energies = [&](const std::vector<double>& u, double* N, double* D) {
    double num = 0.0, den = 0.0;
    for (double v : u) num += std::pow(std::abs(v), q);
    for (const auto& cell : cells) {
      const double u00 = u_at(u, cell.c[0]), u10 = u_at(u, cell.c[1]);
      const double u01 = u_at(u, cell.c[2]), u11 = u_at(u, cell.c[3]);
      const double gx = (u10 + u11 - u00 - u01) / (2.0 * h);
      const double gy = (u01 + u11 - u00 - u10) / (2.0 * h);
      den += std::pow(gx * gx + gy * gy + eps, p / 2.0);
    }
    *N = h2 * num;
    *D = h2 * den;
  };

  auto normalize = [&](std::vector<double>& u) {
    double num = 0.0;
    for (double& v : u) {
      if (v < 0.0) v = 0.0;  // ground state is signless
      num += std::pow(v, q);
    }
    const double nq = std::pow(h2 * num, 1.0 / q);
    if (nq <= 0.0) throw Error(ErrorCode::NoConvergence, "iterate collapsed to zero");
    for (double& v : u) v /= nq;
  };

  // start from the exact-distance profile, positive and peaked inside
  std::vector<double> u(n);
  {
    const DensityField dt = distance_transform(std::shared_ptr<const Grid>(&g, [](const Grid*) {}));
    for (int r = 0; r < n; ++r) u[r] = std::max(dt.values[nodes[r]], 1e-6 * h);
  }
  normalize(u);

  double N, D;
  energies(u, &N, &D);
  double J = std::pow(N, p / q) / D;
  double step = 1.0;
  int stall = 0;

  std::vector<double> gradJ(n), trial(n);
  for (int it = 0; it < opts.max_ps_iters; ++it) {
    // ∇J = (p/q) N^{p/q-1} ∇N / D - N^{p/q} ∇D / D^2
    std::fill(gradJ.begin(), gradJ.end(), 0.0);
    const double cN = (p / q) * std::pow(N, p / q - 1.0) / D;
    const double cD = std::pow(N, p / q) / (D * D);
    for (int r = 0; r < n; ++r)
      gradJ[r] += cN * h2 * q * std::pow(std::abs(u[r]), q - 1.0) * (u[r] >= 0.0 ? 1.0 : -1.0);
    for (const auto& cell : cells) {
      const double u00 = u_at(u, cell.c[0]), u10 = u_at(u, cell.c[1]);
      const double u01 = u_at(u, cell.c[2]), u11 = u_at(u, cell.c[3]);
      const double gx = (u10 + u11 - u00 - u01) / (2.0 * h);
      const double gy = (u01 + u11 - u00 - u10) / (2.0 * h);
      const double w = cD * h2 * p * std::pow(gx * gx + gy * gy + eps, p / 2.0 - 1.0) / (2.0 * h);
      const double dx = w * gx, dy = w * gy;
      if (cell.c[0] >= 0) gradJ[cell.c[0]] -= -dx - dy;
      if (cell.c[1] >= 0) gradJ[cell.c[1]] -= dx - dy;
      if (cell.c[2] >= 0) gradJ[cell.c[2]] -= -dx + dy;
      if (cell.c[3] >= 0) gradJ[cell.c[3]] -= dx + dy;
    }

    double gnorm = 0.0;
    for (double v : gradJ) gnorm = std::max(gnorm, std::abs(v));
    if (gnorm == 0.0) break;

    bool accepted = false;
    for (int bt = 0; bt < 60 && !accepted; ++bt) {
      for (int r = 0; r < n; ++r) trial[r] = u[r] + step / gnorm * gradJ[r];
      normalize(trial);
      double Nt, Dt;
      energies(trial, &Nt, &Dt);
      const double Jt = std::pow(Nt, p / q) / Dt;
      if (Jt > J) {
        const double rel = (Jt - J) / Jt;
        u.swap(trial);
        N = Nt;
        D = Dt;
        J = Jt;
        step *= 1.3;
        accepted = true;
        stall = rel <= opts.ps_tol ? stall + 1 : 0;
      } else {
        step *= 0.5;
        if (step < 1e-14) {
          stall = 5;
          accepted = true;
        }
      }
    }
    if (stall >= 5) return J;
  }
  throw Error(ErrorCode::NoConvergence, "Rayleigh ascent did not settle");
}

double value_on_nodes(const Grid& g, const std::vector<int>& nodes, double p, double q,
                      const SolverOptions& opts) {
  if (nodes.empty()) return 0.0;
  if (p == 2.0 && q == 2.0) {
    const auto spec = detail::lowest_eigenpairs(
        detail::assemble(g, nodes, Coefficients::laplacian()), 1, opts);
    return 1.0 / spec.values.front();
  }
  return ascent_on_nodes(g, nodes, p, q, opts);
}

}  // namespace

double poincare_sobolev(const OpenRegion& region, double p, double q, const SolverOptions& opts) {
  check_exponents(p, q);
  if (region.empty()) return 0.0;
  double best = 0.0;
  for (const auto& comp : region.components)
    best = std::max(best, value_on_nodes(*region.grid, comp, p, q, opts));
  return best;
}

double poincare_sobolev_direct(const OpenRegion& region, double p, double q,
                               const SolverOptions& opts) {
  check_exponents(p, q);
  if (region.empty()) return 0.0;
  return value_on_nodes(*region.grid, region.free_nodes, p, q, opts);
}

}  // namespace maxshape
