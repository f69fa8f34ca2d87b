#pragma once

#include <optional>
#include <utility>

#include "expedis/cuts.hpp"
#include "expedis/transform.hpp"

namespace expedis {

struct SolverConfig {
  double time_limit = 600.0;   // seconds
  long node_limit = 1000000;
  CutBudget bound_budget{.rounds = 8, .per_round = 150};
  int gw_trials = 20;
  std::uint64_t seed = 1;
  std::optional<double> early_cutoff;  // e'Qe - rho
  bool deterministic = true;
  int leaf_enumeration = 10;  // enumerate nodes at or below this order
};

enum class MaxCutStatus { Optimal, EarlyInfeasible, TimeLimit };

struct SolveReport {
  Cut best_cut;
  double z_lb = 0.0;
  double z_ub = 0.0;
  MaxCutStatus status = MaxCutStatus::Optimal;
  long nodes = 0;
  double root_gap = 0.0;
};

/// Exact maximum cut by enumeration (first vertex pinned to +1),
/// Gray-code incremental updates; capped at 26 vertices.
std::pair<double, Cut> brute_force_maxcut(const MaxCutInstance& g,
                                          int cap = 26);

/// Gram factorization V (rows are unit vectors) of the relaxation
/// solution, together with a safe upper bound on z_maxcut.
struct RootRelaxation {
  double upper_bound = 0.0;
  Matrix gram;  // n_vertices x r, X ~= gram * gram'
  Matrix X;
  bool degraded = false;  // cut loop failed, plain Shor bound used
};

RootRelaxation root_relaxation(const MaxCutInstance& g,
                               const CutBudget& budget);

/// Best cut over `trials` random hyperplanes, each polished by 1-opt
/// single-vertex moves. Deterministic under a fixed seed.
Cut gw_round_and_improve(const Matrix& gram, const MaxCutInstance& g,
                         int trials, std::uint64_t seed);

/// SDP-bounded branch-and-bound; branching pins a vertex to the same or
/// the opposite block as vertex 0. Stops EarlyInfeasible as soon as the
/// global upper bound drops below cfg.early_cutoff.
SolveReport solve_maxcut(const MaxCutInstance& g, const SolverConfig& cfg);

/// Maps a cut to a feasible assignment when its value reaches
/// e'Qe - rho (such cuts always decode to feasible points); nullopt
/// otherwise.
/// The residual of the returned assignment is verified against p.
std::optional<AssignmentPm1> feasible_from_cut(const Cut& cut,
                                               const MaxCutInstance& g,
                                               double rho,
                                               const BqpPm1Instance& p);

}  // namespace expedis
