#pragma once

#include "expedis/maxcut.hpp"
#include "expedis/penalty.hpp"

namespace expedis {

enum class PenaltyChoice { Las, Cli, Gw, Auto };

struct PipelineConfig {
  PenaltyChoice penalty_mode = PenaltyChoice::Auto;  // Auto = Gw + update
  std::optional<double> epsilon;  // default policy when unset
  SolverConfig solver;
  bool enable_feasible_update = true;
  bool least_violation = false;
  bool brute_force_crosscheck = false;  // n <= 25 only
  CutBudget bound_budget{.rounds = 8, .per_round = 150};
};

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct Outcome {
  Solution solution;
  PenaltyParameters parameters_used;
  BoundPair bounds_used;
  SolveReport maxcut_report;
  std::vector<StageTiming> timeline;
  bool heuristic_update_fired = false;
  bool infeasible_by_certificate = false;  // projected SDP short-circuit
  bool unconstrained_path = false;
};

/// Runs the full reduce-and-solve scheme: transform, provisional-penalty
/// heuristic round, penalty-parameter computation, max-cut solve, and
/// interpretation of h* against the threshold.
Outcome expedis_solve(const Bqp01Instance& p, const PipelineConfig& cfg = {});

/// True when the constraint-aware upper bound lies strictly below the
/// lower bound over the infeasible set, so every hypercube minimizer is
/// feasible and constraints can be dropped.
bool unconstrained_fast_path(const BoundPair& bp_u, const BoundPair& bp_l);

/// Least-violation mode: returns the hypercube point minimizing
/// ||Ax - b||^2, with its objective value.
Outcome least_violated(const Bqp01Instance& p, const PipelineConfig& cfg = {});

}  // namespace expedis
