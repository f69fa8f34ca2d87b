#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "expedis/util.hpp"

namespace expedis {

/// Thrown on malformed instance data (asymmetry, non-integrality,
/// dimension mismatches).
struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Linearly constrained binary quadratic problem over y in {0,1}^n:
///   min y'F_hat y + c_hat'y  s.t.  A_hat y = b_hat.
struct Bqp01Instance {
  int n = 0;
  int m = 0;
  Matrix F_hat;  // symmetric n x n
  Vector c_hat;  // n
  Matrix A_hat;  // integer-valued m x n
  Vector b_hat;  // integer-valued m

  /// Checks symmetry (repairing asymmetry below 1e-9), integrality of
  /// A_hat/b_hat, and dimensions. Throws ModelError on violation.
  void validate_and_repair();
};

/// The same problem in the x in {-1,1}^n encoding:
///   min f(x) = x'Fx + c'x + alpha  s.t.  Ax = b.
struct BqpPm1Instance {
  int n = 0;
  int m = 0;
  Matrix F;
  Vector c;
  Matrix A;
  Vector b;
  double alpha = 0.0;
  // set when the source 0/1 data was integer-valued, so that ||Ax-b||^2
  // is a nonnegative integer for every x in {-1,1}^n
  bool integral_source = true;
};

/// A point of the {-1,1}^n hypercube.
struct AssignmentPm1 {
  Vector x;
};

enum class SolveStatus { Optimal, Infeasible, LeastViolated, TimeLimit };

struct SolveStats {
  long nodes = 0;
  double seconds = 0.0;
};

struct Solution {
  SolveStatus status = SolveStatus::Optimal;
  std::optional<Vector> x01;  // 0/1 vector, absent when Infeasible
  double objective = 0.0;     // f* (Optimal) or h-value (LeastViolated)
  double residual = 0.0;      // ||Ax-b||^2 at the returned point
  SolveStats stats;
};

/// Change of variables x = 2y - e (and its data transform).
BqpPm1Instance to_plus_minus_one(const Bqp01Instance& p);

/// f(x) = x'Fx + c'x + alpha
double objective_pm1(const BqpPm1Instance& p, const AssignmentPm1& x);

/// ||Ax-b||^2, snapped to the nearest integer when the source data was
/// integral and the value is within 1e-9 of it.
double residual(const BqpPm1Instance& p, const AssignmentPm1& x);

/// h(x) = f(x) + sigma ||Ax-b||^2
double penalized_objective(const BqpPm1Instance& p, double sigma,
                           const AssignmentPm1& x);

/// Exhaustive ground truth over the hypercube.
struct BruteForceResult {
  Solution solution;
  bool delta_empty = false;    // no feasible point
  bool delta_c_empty = false;  // every point feasible
  double ell_star = 0.0;       // min f over the infeasible points
  double u_star = 0.0;         // max f over the feasible points
  double min_hypercube = 0.0;  // min f over all of {-1,1}^n
  double max_hypercube = 0.0;
  double min_residual = 0.0;   // min ||Ax-b||^2 over the hypercube
  Vector best_x;               // argmin of f over Delta (when nonempty),
                               // lexicographically smallest on ties
};

/// Full enumeration of {-1,1}^n; n is capped (default 25).
BruteForceResult brute_force_solve(const BqpPm1Instance& p, int cap = 25);

/// 0/1 <-> +-1 conversions for reporting.
inline Vector pm1_to_01(const Vector& x) {
  return ((x.array() + 1.0) / 2.0).matrix();
}

}  // namespace expedis
