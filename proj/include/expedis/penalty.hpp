#pragma once

#include <optional>

#include "expedis/bounds.hpp"
#include "expedis/model.hpp"

namespace expedis {

enum class PenaltyMode { Lasserre, Cli, Gw, FeasibleUpdate, LeastViolation };

/// A threshold/penalty pair with the separation property:
/// every feasible x has h(x) <= rho, every infeasible x has h(x) > rho.
/// rho is absent in the feasible-update and least-violation modes,
/// where infeasibility detection is off by construction.
struct PenaltyParameters {
  std::optional<double> rho;
  double sigma = 0.0;
  double epsilon = 0.0;
  PenaltyMode mode = PenaltyMode::Gw;
  BoundPair source_bounds;
};

/// Default epsilon policy: 1 for integral source data (keeps the strict
/// inequality h > rho robust), else 1e-4 * (1 + |u - ell|).
double default_epsilon(const BqpPm1Instance& p, const BoundPair& bp);

/// rho = max{|ell|,|u|}, sigma = 2 max{|ell|,|u|} + 1.
PenaltyParameters lasserre_params(const BoundPair& bp);

/// rho = u, sigma = u - ell + epsilon.
PenaltyParameters gw_params(const BoundPair& bp, double epsilon);

/// sigma' = f(x') - ell + epsilon for a verified feasible x'.
PenaltyParameters feasible_update(double ell, double f_feasible,
                                  double epsilon);

/// sigma = u_hypercube - ell + epsilon; the minimizer of h then attains
/// the least constraint violation over the hypercube.
PenaltyParameters least_violation_params(double ell, double u_hypercube,
                                         double epsilon);

/// Enumeration check of the separation property (n capped).
bool validate_params(const BqpPm1Instance& p, const PenaltyParameters& pp,
                     int cap = 20);

}  // namespace expedis
