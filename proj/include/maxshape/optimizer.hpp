#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "maxshape/audit.hpp"
#include "maxshape/functionals.hpp"

namespace maxshape {

enum class MoveKind { PerturbVertex, SplitEdge, SlideBranch, BallSurgery, EnlargeSpur, PruneSpur };

const char* to_string(MoveKind m);

struct OptConfig {
  DomainSpec domain;
  double L = 1.0;
  SetFunctional functional = SetFunctional::inradius();
  Coefficients coeff;
  SolverOptions solver;
  double grid_h = 1.0 / 64;
  std::map<MoveKind, double> move_weights = {
      {MoveKind::PerturbVertex, 3.0}, {MoveKind::SplitEdge, 1.0},  {MoveKind::SlideBranch, 1.0},
      {MoveKind::BallSurgery, 0.5},   {MoveKind::EnlargeSpur, 1.0}, {MoveKind::PruneSpur, 1.0},
  };
  double t0 = -1.0;       // <=0: auto (2% of the initial value)
  double cooling = -1.0;  // <=0: auto (reach t0/1000 at the horizon)
  int iterations = 2000;
  std::uint64_t seed = 1;
  double length_tol = 1e-6;
  int surgery_arcs = 24;
  double perturb_scale = 0.0;       // <=0: auto (2h)
  double capacity_fraction = 0.25;  // L must stay below fraction * area/h

  void validate() const;  // throws InfeasibleLength / InvalidInput
  double length_capacity() const;
};

struct TraceRow {
  int iter = 0;
  MoveKind move = MoveKind::PerturbVertex;
  double value = 0.0;
  double length = 0.0;
  bool accepted = false;
};

struct OptResult {
  CurveNetwork best;
  double best_value = 0.0;
  std::vector<TraceRow> trace;
  AhlforsReport audit;
  int evaluations = 0;
  int cache_hits = 0;
};

// Diameter-aligned segment through the centroid, grown to length L.
CurveNetwork initial_guess(const DomainSpec& domain, double L, std::uint64_t seed);

// Restore feasibility: clamp into the closed domain, re-weld, then fix the
// length (grow via the enlargement, trim degree-1 spurs longest-first, scale
// toward the length-weighted centroid as a last resort).
CurveNetwork repair(const CurveNetwork& net, const DomainSpec& domain, double L,
                    double length_tol = 1e-6, double grid_h = 1.0 / 64,
                    std::uint64_t seed = 0);

// One proposal (before repair). Throws MoveInapplicable when the sampled move
// cannot act on the current network.
CurveNetwork propose(const CurveNetwork& current, const OptConfig& config, MoveKind move,
                     std::uint64_t iteration_seed);

// Simulated annealing on F(Ω \ Σ); deterministic given (config, seed).
OptResult minimize(const OptConfig& config);

std::string trace_csv(const std::vector<TraceRow>& trace);

}  // namespace maxshape
