#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "maxshape/bessel.hpp"
#include "maxshape/fixtures.hpp"
#include "maxshape/pde.hpp"

using namespace maxshape;

namespace {

// independent oracle: separable series for -Δw = 1 on (0,1)^2 at the center
double square_torsion_max_series() {
  double s = 0.125;
  for (int k = 1; k < 801; k += 2) {
    const double kpi = k * M_PI;
    const double sign = (k % 4 == 1) ? 1.0 : -1.0;
    s -= 4.0 / (kpi * kpi * kpi) * sign / std::cosh(kpi / 2.0);
  }
  return s;  // 0.07367135328151381...
}

double square_torsion_l1_series() {
  double s = 1.0 / 12.0;
  for (int k = 1; k < 2001; k += 2) {
    const double kpi = k * M_PI;
    s -= 16.0 * std::tanh(kpi / 2.0) / std::pow(kpi, 5);
  }
  return s;  // 0.03514425373878884...
}

}  // namespace

TEST_CASE("series oracles reproduce the classical square torsion constants") {
  CHECK(square_torsion_max_series() == doctest::Approx(0.0736713532815138).epsilon(1e-12));
  CHECK(square_torsion_l1_series() == doctest::Approx(0.0351442537387888).epsilon(1e-12));
}

TEST_CASE("torsion: empty region convention") {
  OpenRegion empty;
  empty.grid = rasterize(fixtures::unit_square(), nullptr, 1.0 / 16);
  const TorsionSolution sol = solve_torsion(empty);
  CHECK(sol.max_value == 0.0);
  CHECK(sol.l1_value == 0.0);
}

TEST_CASE("torsion: unit disk maximum approaches R^2/4") {
  const OpenRegion disk = fixtures::disk_region({0, 0}, 1.0, 1.0 / 64);
  const TorsionSolution sol = solve_torsion(disk);
  CHECK(sol.max_value == doctest::Approx(0.25).epsilon(0.025));
  // max shear stress of the disk is R/2 on the rim
  CHECK(sol.grad_max == doctest::Approx(0.5).epsilon(0.05));
  CHECK(dist(sol.max_location, {0, 0}) <= 2.0 / 64);
}

TEST_CASE("torsion: unit square against the series oracle") {
  const OpenRegion square = fixtures::square_region(1.0 / 128);
  const TorsionSolution sol = solve_torsion(square);
  CHECK(sol.max_value == doctest::Approx(square_torsion_max_series()).epsilon(0.02));
  CHECK(sol.l1_value == doctest::Approx(square_torsion_l1_series()).epsilon(0.02));
}

TEST_CASE("torsion: discrete maximum principle") {
  const CurveNetwork plus = fixtures::plus_network({0.5, 0.5}, 0.3, 0.3);
  const auto grid = rasterize(fixtures::unit_square(), &plus, 1.0 / 64);
  const OpenRegion region = components(grid);
  const TorsionSolution sol = solve_torsion(region);
  for (int v : region.free_nodes) CHECK(sol.w[v] > 0.0);
  // the maximum sits strictly inside the free set
  const DensityField dt = distance_transform(grid);
  double at_max = 0.0;
  for (int v : region.free_nodes)
    if (sol.w[v] == sol.max_value) at_max = dt.values[v];
  CHECK(at_max > grid->h);
}

TEST_CASE("torsion: rigidity is additive across components") {
  const auto parts = fixtures::strip_family(5);
  REQUIRE(parts.size() >= 3);
  const OpenRegion whole = components(parts.front().grid);
  const TorsionSolution direct = solve_torsion(whole);
  double sum = 0.0;
  double max_part = 0.0;
  for (std::size_t c = 0; c < whole.components.size(); ++c) {
    const TorsionSolution part = solve_torsion(whole.select({static_cast<int>(c)}));
    sum += part.l1_value;
    max_part = std::max(max_part, part.max_value);
  }
  CHECK(direct.l1_value == doctest::Approx(sum).epsilon(1e-9));
  // and the maximum decouples (w_{A1∪A2} restricted to A_i solves A_i)
  CHECK(direct.max_value == doctest::Approx(max_part).epsilon(1e-9));
}

TEST_CASE("eigenvalues: unit square Laplacian ground state is 2π²") {
  const OpenRegion square = fixtures::square_region(1.0 / 64);
  const Spectrum spec = eigenvalues(square, Coefficients::laplacian(), 3);
  CHECK(spec.values[0] == doctest::Approx(2 * M_PI * M_PI).epsilon(0.01));
  // λ2 = λ3 = 5π²
  CHECK(spec.values[1] == doctest::Approx(5 * M_PI * M_PI).epsilon(0.01));
  CHECK(spec.values[2] == doctest::Approx(5 * M_PI * M_PI).epsilon(0.01));
  for (std::size_t j = 1; j < spec.values.size(); ++j)
    CHECK(spec.values[j] >= spec.values[j - 1]);
  for (double r : spec.residuals) CHECK(r <= 1e-6);
}

TEST_CASE("eigenvalues: disk ground state matches the Bessel zero") {
  for (double r : {1.0, 0.5}) {
    const OpenRegion disk = fixtures::disk_region({0, 0}, r, r / 64);
    const Spectrum spec = eigenvalues(disk, Coefficients::laplacian(), 1);
    const double j01 = disk_dirichlet_zero(1);
    CHECK(spec.values[0] == doctest::Approx(j01 * j01 / (r * r)).epsilon(0.03));
  }
}

TEST_CASE("eigenvalues: constant coefficients shift and scale the spectrum exactly") {
  const OpenRegion square = fixtures::square_region(1.0 / 48);
  const Spectrum base = eigenvalues(square, Coefficients::laplacian(), 3);
  const Spectrum scaled = eigenvalues(square, Coefficients::constant(2.0, 1.0, 3.0), 3);
  for (int j = 0; j < 3; ++j)
    CHECK(scaled.values[j] ==
          doctest::Approx(2.0 * base.values[j] + 3.0).epsilon(20 * 1e-6));
}

TEST_CASE("eigenvalues: disjoint disks merge ascending across components") {
  const double h = 1.0 / 64;
  const double r1 = 0.35, r2 = 0.5;
  // one grid holding both disks, far apart inside a wide rectangle
  const DomainSpec box = DomainSpec::rectangle(-1.2, -0.7, 1.6, 0.7);
  const auto grid = rasterize(box, nullptr, h);
  std::vector<std::uint8_t> mask(grid->node_count(), 0);
  std::vector<std::uint8_t> m1(grid->node_count(), 0), m2(grid->node_count(), 0);
  for (std::size_t v = 0; v < grid->node_count(); ++v) {
    const Point2 p = grid->node_point(static_cast<int>(v));
    if (dist(p, {-0.6, 0}) < r1 - h / 2) mask[v] = m1[v] = 1;
    if (dist(p, {0.8, 0}) < r2 - h / 2) mask[v] = m2[v] = 1;
  }
  const OpenRegion both = region_from_mask(grid, mask);
  REQUIRE(both.components.size() == 2);
  const Spectrum merged = eigenvalues(both, Coefficients::laplacian(), 2);
  const Spectrum alone1 = eigenvalues(region_from_mask(grid, m1), Coefficients::laplacian(), 1);
  const Spectrum alone2 = eigenvalues(region_from_mask(grid, m2), Coefficients::laplacian(), 1);
  // interlacing: λ1(big disk) < λ1(small disk) < λ2(big disk)
  CHECK(merged.values[0] == doctest::Approx(alone2.values[0]).epsilon(1e-10));
  CHECK(merged.values[1] == doctest::Approx(alone1.values[0]).epsilon(1e-10));
  const double j01 = disk_dirichlet_zero(1);
  CHECK(merged.values[0] == doctest::Approx(j01 * j01 / (r2 * r2)).epsilon(0.05));
  CHECK(merged.values[1] == doctest::Approx(j01 * j01 / (r1 * r1)).epsilon(0.05));
}

TEST_CASE("eigenvalues: NotEnoughModes when the region is too small") {
  const OpenRegion square = fixtures::square_region(1.0 / 8);
  CHECK_THROWS_AS(eigenvalues(square, Coefficients::laplacian(),
                              static_cast<int>(square.size()) + 1),
                  Error);
}

TEST_CASE("ede sandwich: identity, collapsed, and checkerboard coefficients") {
  const OpenRegion square = fixtures::square_region(1.0 / 48);
  {
    const EdeReport rep = ede_bounds_check(square, Coefficients::laplacian(), 3);
    CHECK(rep.pass);
    for (std::size_t j = 0; j < rep.lower_margin.size(); ++j) {
      CHECK(rep.weighted.values[j] == rep.dirichlet.values[j]);  // identical solves
      CHECK(std::abs(rep.lower_margin[j]) <= 1e-6 * rep.weighted.values[j]);
    }
  }
  {
    const EdeReport rep = ede_bounds_check(square, Coefficients::constant(2.0, 1.0, 3.0), 3);
    CHECK(rep.pass);
    // σ1=σ2, ρ1=ρ2: both bounds tight up to solver tolerance
    for (std::size_t j = 0; j < rep.lower_margin.size(); ++j) {
      CHECK(std::abs(rep.lower_margin[j] - 3.0) <= 1e-4 * rep.weighted.values[j]);
      CHECK(std::abs(rep.upper_margin[j]) <= 1e-4 * rep.weighted.values[j]);
    }
  }
  {
    Coefficients cb;
    cb.sigma = [](Point2 p) {
      const int ix = static_cast<int>(std::floor(p.x * 4)), iy = static_cast<int>(std::floor(p.y * 4));
      return ((ix + iy) % 2 == 0) ? 1.0 : 2.0;
    };
    cb.sigma1 = 1.0;
    cb.sigma2 = 2.0;
    const EdeReport rep = ede_bounds_check(square, cb, 3);
    CHECK(rep.pass);
    for (std::size_t j = 0; j < rep.lower_margin.size(); ++j) {
      CHECK(rep.lower_margin[j] >= -1e-6 * rep.weighted.values[j]);
      CHECK(rep.upper_margin[j] >= -1e-6 * rep.weighted.values[j]);
    }
  }
}

TEST_CASE("poincare_sobolev: exponent gate") {
  const OpenRegion square = fixtures::square_region(1.0 / 32);
  CHECK_THROWS_AS(poincare_sobolev(square, 2.0, 1.0), Error);   // q < p
  CHECK_THROWS_AS(poincare_sobolev(square, 1.0, 1.0), Error);   // Cheeger case excluded
  CHECK_THROWS_AS(poincare_sobolev(square, 1.5, 6.0), Error);   // q >= p* = 6
}

TEST_CASE("poincare_sobolev: p=q=2 is the reciprocal ground eigenvalue") {
  const OpenRegion square = fixtures::square_region(1.0 / 64);
  const double c = poincare_sobolev(square, 2.0, 2.0);
  CHECK(c == doctest::Approx(1.0 / (2 * M_PI * M_PI)).epsilon(0.01));
}

TEST_CASE("poincare_sobolev: disjoint union takes the max across components") {
  const auto parts = fixtures::strip_family(4);
  REQUIRE(parts.size() >= 2);
  const OpenRegion whole = components(parts.front().grid);
  const double direct = poincare_sobolev_direct(whole, 2.0, 2.0);
  double best = 0.0;
  for (std::size_t c = 0; c < whole.components.size(); ++c)
    best = std::max(best, poincare_sobolev(whole.select({static_cast<int>(c)}), 2.0, 2.0));
  CHECK(direct == doctest::Approx(best).epsilon(1e-7));
}

TEST_CASE("poincare_sobolev: ball scaling exponent (light version)") {
  // C(B_r)/C(B_1) = r^{2p/q+p-2}; resolution scales with the radius
  const double p = 2.0, q = 3.0;
  const double c1 = poincare_sobolev(fixtures::disk_region({0, 0}, 1.0, 1.0 / 48), p, q);
  const double chalf = poincare_sobolev(fixtures::disk_region({0, 0}, 0.5, 0.5 / 48), p, q);
  const double expo = 2.0 * p / q + p - 2.0;
  CHECK(chalf / c1 == doctest::Approx(std::pow(0.5, expo)).epsilon(0.03));
}
