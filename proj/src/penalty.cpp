#include "expedis/penalty.hpp"

#include <cmath>

namespace expedis {

double default_epsilon(const BqpPm1Instance& p, const BoundPair& bp) {
  if (p.integral_source) return 1.0;
  return 1e-4 * (1.0 + std::abs(bp.u - bp.ell));
}

PenaltyParameters lasserre_params(const BoundPair& bp) {
  const double mx = std::max(std::abs(bp.ell), std::abs(bp.u));
  PenaltyParameters pp;
  pp.rho = mx;
  pp.sigma = 2.0 * mx + 1.0;
  pp.epsilon = 1.0;
  pp.mode = PenaltyMode::Lasserre;
  pp.source_bounds = bp;
  return pp;
}

PenaltyParameters gw_params(const BoundPair& bp, double epsilon) {
  if (epsilon <= 0.0) throw ModelError("epsilon must be positive");
  PenaltyParameters pp;
  pp.rho = bp.u;
  pp.sigma = bp.u - bp.ell + epsilon;
  pp.epsilon = epsilon;
  pp.mode = PenaltyMode::Gw;
  pp.source_bounds = bp;
  return pp;
}

PenaltyParameters feasible_update(double ell, double f_feasible,
                                  double epsilon) {
  if (epsilon <= 0.0) throw ModelError("epsilon must be positive");
  PenaltyParameters pp;
  pp.sigma = f_feasible - ell + epsilon;
  pp.epsilon = epsilon;
  pp.mode = PenaltyMode::FeasibleUpdate;
  pp.source_bounds.ell = ell;
  pp.source_bounds.u = f_feasible;
  return pp;
}

PenaltyParameters least_violation_params(double ell, double u_hypercube,
                                         double epsilon) {
  if (epsilon <= 0.0) throw ModelError("epsilon must be positive");
  PenaltyParameters pp;
  pp.sigma = u_hypercube - ell + epsilon;
  pp.epsilon = epsilon;
  pp.mode = PenaltyMode::LeastViolation;
  pp.source_bounds.ell = ell;
  pp.source_bounds.u = u_hypercube;
  pp.source_bounds.scope_u = UScope::OverHypercube;
  return pp;
}

bool validate_params(const BqpPm1Instance& p, const PenaltyParameters& pp,
                     int cap) {
  if (p.n > cap) throw ModelError("validate_params enumeration cap exceeded");
  if (!pp.rho) throw ModelError("validate_params needs a threshold");
  const double rho = *pp.rho;
  bool ok = true;
  for_each_pm1(p.n, [&](const Vector& x) {
    if (!ok) return;
    AssignmentPm1 a{x};
    const double h = penalized_objective(p, pp.sigma, a);
    if (residual(p, a) == 0.0)
      ok = h <= rho;
    else
      ok = h > rho;
  });
  return ok;
}

}  // namespace expedis
