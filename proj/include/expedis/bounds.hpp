#pragma once

#include <variant>

#include "expedis/cuts.hpp"
#include "expedis/model.hpp"

namespace expedis {

enum class EllScope { OverComplement, OverHypercube };
enum class UScope { OverFeasible, OverHypercube };
enum class BoundProvenance { Trivial, Shor, ShorPlusCuts, Projected };

/// A validated pair ell <= ell* and u >= u* (or bounds over the whole
/// hypercube, per the scope flags).
struct BoundPair {
  double ell = 0.0;
  double u = 0.0;
  EllScope scope_ell = EllScope::OverHypercube;
  UScope scope_u = UScope::OverHypercube;
  BoundProvenance provenance = BoundProvenance::Trivial;
  bool sdp_fallback = false;  // set when an SDP failure degraded the bound
};

/// Orthonormal basis of ns(M) for M = [b, -A].
struct NullSpaceBasis {
  Matrix N;       // (n+1) x (n+1-rank_M), orthonormal columns
  int rank_m = 0;
  double tol_used = 0.0;
};

/// Certificate that the projected SDP (and hence the BQP) is infeasible.
struct InfeasibleCertificate {
  int constraint_row = -1;  // unit-diagonal constraint that cannot hold
};

/// The lifted objective F' = [[alpha, c'/2], [c/2, F]] of order n+1,
/// so that <F',Y> = <F,X> + c'x + alpha for Y = [[1,x'],[x,X]].
Matrix lifted_objective(const BqpPm1Instance& p);

/// The Shor relaxation min/max <F',Y> s.t. diag(Y) = e, Y psd.
SdpProblem shor_problem(const BqpPm1Instance& p, SdpSense sense);

/// ell = alpha - sum|F| - sum|c|, u = alpha + sum|F| + sum|c|.
BoundPair trivial_bounds(const BqpPm1Instance& p);

/// Safe-shifted optima of the Shor relaxation (both senses).
BoundPair shor_bounds(const BqpPm1Instance& p, double tol = 1e-8);

/// Shor bounds tightened by triangle / 5-clique cutting planes.
BoundPair strengthened_bounds(const BqpPm1Instance& p,
                              const CutBudget& budget = {});

NullSpaceBasis null_space_basis(const Matrix& A, const Vector& b,
                                double tol = 1e-10);

/// Upper bound on u* from the null-space-projected SDP over MY = 0,
/// or a certificate that no feasible point exists.
std::variant<BoundPair, InfeasibleCertificate> projected_upper_bound(
    const BqpPm1Instance& p, double tol = 1e-8);

/// Safe upper bound on max f over the entire hypercube (needed by the
/// least-violation construction).
double hypercube_upper_bound(const BqpPm1Instance& p, double tol = 1e-8);

}  // namespace expedis
