#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "expedis/util.hpp"

namespace expedis {

struct SdpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SdpSense { Min, Max };
enum class SdpStatus { Solved, Infeasible, Unbounded, MaxIter };
enum class BoundDirection { Lower, Upper };

/// One linear functional <aa', X> on the matrix variable. Every
/// constraint in this artifact is of this rank-one form (diagonal
/// pins e_j e_j' and clique cuts bb'), which the solver exploits when
/// assembling the Schur complement.
struct LinearTerm {
  Vector a;       // <aa', X>
  double rhs;
};

/// min/max <C,X>  s.t.  <a_i a_i', X> = b_i,  <b_j b_j', X> >= g_j,  X psd.
struct SdpProblem {
  int dim = 0;
  Matrix objective;                 // symmetric C
  SdpSense sense = SdpSense::Min;
  std::vector<LinearTerm> eq_constraints;
  std::vector<LinearTerm> ineq_cuts;

  /// Adds an equality <M,X> = rhs for a symmetric M. M must be
  /// (numerically) rank one and psd or nsd; general matrices are not
  /// needed by any relaxation in this toolkit.
  void add_eq_matrix(const Matrix& M, double rhs);

  static SdpProblem diag_e(int dim, const Matrix& C, SdpSense sense);
};

struct KktResiduals {
  double primal = 0.0;  // ||b - A(X)|| / (1 + ||b||)
  double dual = 0.0;    // ||C - A*(y) - Z|| / (1 + ||C||)
  double gap = 0.0;     // |<C,X> - b'y| / (1 + |<C,X>|)
};

struct SdpSolution {
  SdpStatus status = SdpStatus::MaxIter;
  Matrix X;
  double value = 0.0;       // primal objective, in the problem's sense
  double dual_value = 0.0;  // dual objective, in the problem's sense
  double tol = 1e-8;        // tolerance the solve was run with
  KktResiduals kkt;
  Vector eq_duals;          // multipliers of the equality constraints
  Vector cut_duals;         // multipliers of the inequality cuts
  // index of an equality constraint proved unsatisfiable (0-matrix with
  // nonzero rhs), when status == Infeasible and such a witness exists
  std::optional<int> infeasible_row;
  int iterations = 0;
};

struct SdpOptions {
  double tol = 1e-8;
  int max_iterations = 100;
  int dim_cap = 400;
};

/// Dense primal-dual interior-point solve (HKM direction, Mehrotra
/// predictor-corrector). Inequality cuts are handled through
/// nonnegative slacks in a product cone.
SdpSolution solve(const SdpProblem& p, double tol);
SdpSolution solve(const SdpProblem& p, const SdpOptions& opts);

/// Shifts the dual objective to the requested safe side by
/// tol * (1 + |dual_value|), so the returned number brackets the exact
/// optimum despite solver inexactness.
double safe_bound(const SdpSolution& s, BoundDirection direction);

}  // namespace expedis
