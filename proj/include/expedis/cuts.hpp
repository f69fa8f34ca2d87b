#pragma once

#include <cstdint>
#include <vector>

#include "expedis/sdp.hpp"

namespace expedis {

/// Clique inequality b'Xb >= 1 with b in {-1,0,1}^n and an odd number
/// (3 or 5) of nonzero entries.
struct CliqueCut {
  Vector b;
  double violation = 0.0;  // 1 - b'Xb at the X that produced it
};

struct HeuristicParams {
  int restarts = 50;        // random 5-subsets tried
  int swaps = 100;          // single-index swaps per restart
  double temp = 1.0;        // initial annealing temperature
  double cooling = 0.95;    // geometric decay per swap
  std::uint64_t seed = 1;
};

struct CutBudget {
  int rounds = 20;
  int per_round = 300;
  double min_violation = 1e-3;
  double sdp_tol = 1e-8;
  HeuristicParams five_clique;
};

/// All triangle inequalities violated by more than min_violation,
/// sorted by violation descending, truncated to max_cuts.
std::vector<CliqueCut> separate_triangle(const Matrix& X,
                                         double min_violation = 1e-3,
                                         int max_cuts = 300);

/// Annealed local search for violated 5-clique inequalities.
/// Deterministic under a fixed params.seed.
std::vector<CliqueCut> separate_five_clique(const Matrix& X,
                                            const HeuristicParams& params,
                                            double min_violation = 1e-3,
                                            int max_cuts = 300);

/// Iterated solve/separate on a base problem whose matrix has unit
/// diagonal: triangles first, 5-cliques once the triangles are clean.
/// Inactive cuts (dual below 1e-7 twice in a row) are dropped.
SdpSolution cutting_plane_loop(const SdpProblem& p, const CutBudget& budget);

}  // namespace expedis
