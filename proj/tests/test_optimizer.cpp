#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "maxshape/fixtures.hpp"
#include "maxshape/optimizer.hpp"

using namespace maxshape;

namespace {

OptConfig mdp_config(double L, int iterations, std::uint64_t seed) {
  OptConfig cfg;
  cfg.domain = fixtures::unit_square();
  cfg.L = L;
  cfg.functional = SetFunctional::inradius();
  cfg.grid_h = 1.0 / 32;
  cfg.iterations = iterations;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("initial guess: short lengths give the centered bbox-aligned segment") {
  const CurveNetwork net = initial_guess(fixtures::unit_square(), 0.5, 1);
  REQUIRE(net.vertices.size() == 2);
  CHECK(total_length(net) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(net.vertices[0].y == doctest::Approx(0.5));
  CHECK(net.vertices[1].y == doctest::Approx(0.5));
  CHECK(std::min(net.vertices[0].x, net.vertices[1].x) == doctest::Approx(0.25));
  CHECK(std::max(net.vertices[0].x, net.vertices[1].x) == doctest::Approx(0.75));
}

TEST_CASE("initial guess: lengths beyond the chord grow spurs") {
  const DomainSpec disk = fixtures::disk_domain({0, 0}, 1.0, 256);
  const CurveNetwork net = initial_guess(disk, 3.0, 2);
  CHECK(net.connected());
  CHECK(total_length(net) == doctest::Approx(3.0).epsilon(1e-6));
  for (const auto& v : net.vertices) CHECK(disk.contains_closed(v, 1e-6));
}

TEST_CASE("initial guess is deterministic bit for bit") {
  const CurveNetwork a = initial_guess(fixtures::unit_square(), 1.7, 42);
  const CurveNetwork b = initial_guess(fixtures::unit_square(), 1.7, 42);
  REQUIRE(a.vertices.size() == b.vertices.size());
  REQUIRE(a.edges == b.edges);
  for (std::size_t v = 0; v < a.vertices.size(); ++v) {
    CHECK(a.vertices[v].x == b.vertices[v].x);
    CHECK(a.vertices[v].y == b.vertices[v].y);
  }
}

TEST_CASE("repair: feasible nets pass through unchanged") {
  const CurveNetwork net = initial_guess(fixtures::unit_square(), 1.0, 3);
  const CurveNetwork fixed = repair(net, fixtures::unit_square(), 1.0, 1e-6, 1.0 / 32, 9);
  CHECK(total_length(fixed) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fixed.vertices.size() == net.vertices.size());
}

TEST_CASE("repair: overlong nets with spurs are trimmed back to L") {
  CurveNetwork net = fixtures::plus_network({0.5, 0.5}, 0.3, 0.3, 1e-9);  // length 1.2
  const CurveNetwork fixed = repair(net, fixtures::unit_square(), 1.0, 1e-6, 1.0 / 32, 9);
  CHECK(total_length(fixed) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(fixed.connected());
}

TEST_CASE("repair: surgery output keeps its circle arcs after trimming") {
  CurveNetwork net = fixtures::plus_network({0.5, 0.5}, 0.4, 0.4, 1e-9);  // length 1.6
  const Ball ball{{0.5, 0.5}, 0.2};
  const CurveNetwork cut = ball_surgery(net, ball, 32);
  CHECK(total_length(cut) > 1.6);
  const CurveNetwork fixed = repair(cut, fixtures::unit_square(), 1.6, 1e-6, 1.0 / 32, 11);
  CHECK(total_length(fixed) == doctest::Approx(1.6).epsilon(1e-6));
  for (int k = 0; k < 32; ++k) {
    const double th = 2 * M_PI * k / 32;
    const Point2 p{0.5 + 0.2 * std::cos(th), 0.5 + 0.2 * std::sin(th)};
    CHECK(distance_to_network(p, fixed) <= 0.02);
  }
}

TEST_CASE("propose: candidates are connected and feasible after repair") {
  const OptConfig cfg = mdp_config(1.2, 0, 5);
  CurveNetwork net = initial_guess(cfg.domain, cfg.L, cfg.seed);
  for (MoveKind mv : {MoveKind::PerturbVertex, MoveKind::SplitEdge, MoveKind::BallSurgery,
                      MoveKind::EnlargeSpur}) {
    const CurveNetwork cand = propose(net, cfg, mv, 1234 + static_cast<int>(mv));
    CHECK(cand.connected());
    const CurveNetwork fixed =
        repair(cand, cfg.domain, cfg.L, cfg.length_tol, cfg.grid_h, 99);
    CHECK(fixed.connected());
    CHECK(std::abs(total_length(fixed) - cfg.L) <= cfg.length_tol);
    for (const auto& v : fixed.vertices) CHECK(cfg.domain.contains_closed(v, 1e-9));
  }
}

TEST_CASE("zero-iteration run returns the initial guess and its value") {
  const OptConfig cfg = mdp_config(1.0, 0, 7);
  const OptResult res = minimize(cfg);
  const CurveNetwork guess =
      repair(initial_guess(cfg.domain, cfg.L, cfg.seed), cfg.domain, cfg.L, cfg.length_tol,
             cfg.grid_h, cfg.seed);
  CHECK(res.trace.empty());
  REQUIRE(res.best.vertices.size() == guess.vertices.size());
  for (std::size_t v = 0; v < guess.vertices.size(); ++v) {
    CHECK(res.best.vertices[v].x == guess.vertices[v].x);
    CHECK(res.best.vertices[v].y == guess.vertices[v].y);
  }
}

TEST_CASE("annealing: trace feasibility and monotone best value") {
  OptConfig cfg = mdp_config(1.0, 150, 11);
  const OptResult res = minimize(cfg);
  CHECK(res.trace.size() == 150);
  for (const auto& row : res.trace)
    CHECK(std::abs(row.length - cfg.L) <= cfg.length_tol * 10);
  CHECK(res.best.connected());
  CHECK(std::abs(total_length(res.best) - cfg.L) <= cfg.length_tol * 10);
  // best value never exceeds the initial segment's value
  const double segment_value = res.trace.front().value;
  CHECK(res.best_value <= segment_value + 1e-12);
}

TEST_CASE("annealing is deterministic for a fixed seed") {
  OptConfig cfg = mdp_config(1.0, 60, 13);
  const OptResult a = minimize(cfg);
  const OptResult b = minimize(cfg);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].value == b.trace[i].value);
    CHECK(a.trace[i].accepted == b.trace[i].accepted);
  }
  CHECK(a.best_value == b.best_value);
}

TEST_CASE("spectral objective: final lambda1 dominates the empty square") {
  OptConfig cfg;
  cfg.domain = fixtures::unit_square();
  cfg.L = 1.0;
  cfg.functional = SetFunctional::composite_inv_lambda_k(1);
  cfg.grid_h = 1.0 / 24;
  cfg.iterations = 25;
  cfg.seed = 3;
  const OptResult res = minimize(cfg);
  const double lambda_best = 1.0 / res.best_value;
  const double lambda_empty =
      1.0 / evaluate(cfg.functional, components(rasterize(cfg.domain, nullptr, cfg.grid_h)));
  CHECK(lambda_best >= lambda_empty - 1e-9);
}

TEST_CASE("infeasible configurations are rejected") {
  OptConfig cfg = mdp_config(1e6, 10, 1);
  CHECK_THROWS_AS(cfg.validate(), Error);
  OptConfig zero_w = mdp_config(1.0, 10, 1);
  for (auto& [k, w] : zero_w.move_weights) w = 0.0;
  CHECK_THROWS_AS(zero_w.validate(), Error);
}

TEST_CASE("minimizer audit hook fills density profiles") {
  OptConfig cfg = mdp_config(1.0, 40, 17);
  const OptResult res = minimize(cfg);
  CHECK_FALSE(res.audit.profiles.empty());
  CHECK(res.audit.c2 == doctest::Approx(2 * M_PI));
  CHECK(res.audit.slack_h == doctest::Approx(cfg.grid_h));
}
