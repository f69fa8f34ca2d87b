#include "expedis/model.hpp"

#include <cmath>
#include <limits>

namespace expedis {

namespace {

bool is_integral(double v, double tol = 1e-9) {
  return std::abs(v - std::round(v)) <= tol;
}

}  // namespace

void Bqp01Instance::validate_and_repair() {
  if (n < 1) throw ModelError("instance needs at least one variable");
  if (m < 0) throw ModelError("negative constraint count");
  if (F_hat.rows() != n || F_hat.cols() != n || c_hat.size() != n)
    throw ModelError("objective dimension mismatch");
  if (A_hat.rows() != m || (m > 0 && A_hat.cols() != n) || b_hat.size() != m)
    throw ModelError("constraint dimension mismatch");

  const double asym = (F_hat - F_hat.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9)
    throw ModelError("F_hat is not symmetric (max asymmetry " +
                     std::to_string(asym) + ")");
  if (asym > 0.0) F_hat = ((F_hat + F_hat.transpose()) / 2.0).eval();

  for (int i = 0; i < m; ++i) {
    if (!is_integral(b_hat[i]))
      throw ModelError("b_hat[" + std::to_string(i) + "] is not integral");
    for (int j = 0; j < n; ++j)
      if (!is_integral(A_hat(i, j)))
        throw ModelError("A_hat(" + std::to_string(i) + "," +
                         std::to_string(j) + ") is not integral");
  }
}

BqpPm1Instance to_plus_minus_one(const Bqp01Instance& p_in) {
  Bqp01Instance p = p_in;
  p.validate_and_repair();

  const Vector e = Vector::Ones(p.n);
  BqpPm1Instance q;
  q.n = p.n;
  q.m = p.m;
  q.F = p.F_hat / 4.0;
  q.c = 0.5 * (p.c_hat + p.F_hat * e);
  q.A = p.A_hat / 2.0;
  q.b = p.m > 0 ? Vector(p.b_hat - 0.5 * p.A_hat * e) : Vector(0);
  q.alpha = 0.5 * p.c_hat.dot(e) + 0.25 * e.dot(p.F_hat * e);
  q.integral_source = true;
  return q;
}

double objective_pm1(const BqpPm1Instance& p, const AssignmentPm1& a) {
  if (a.x.size() != p.n) throw ModelError("assignment dimension mismatch");
  return a.x.dot(p.F * a.x) + p.c.dot(a.x) + p.alpha;
}

double residual(const BqpPm1Instance& p, const AssignmentPm1& a) {
  if (a.x.size() != p.n) throw ModelError("assignment dimension mismatch");
  if (p.m == 0) return 0.0;
  double r = (p.A * a.x - p.b).squaredNorm();
  if (p.integral_source && std::abs(r - std::round(r)) <= 1e-9)
    r = std::round(r);
  return r;
}

double penalized_objective(const BqpPm1Instance& p, double sigma,
                           const AssignmentPm1& a) {
  if (sigma < 0.0) throw ModelError("negative penalty parameter");
  return objective_pm1(p, a) + sigma * residual(p, a);
}

BruteForceResult brute_force_solve(const BqpPm1Instance& p, int cap) {
  if (p.n > cap)
    throw ModelError("brute force capped at " + std::to_string(cap) +
                     " variables");

  constexpr double inf = std::numeric_limits<double>::infinity();
  BruteForceResult out;
  out.ell_star = inf;
  out.u_star = -inf;
  out.min_hypercube = inf;
  out.max_hypercube = -inf;
  out.min_residual = inf;
  double best_f = inf;

  // Walks the hypercube in lexicographic order; at equal objective the
  // first (lexicographically smallest) incumbent is kept.
  for_each_pm1(p.n, [&](const Vector& x) {
    AssignmentPm1 a{x};
    const double f = objective_pm1(p, a);
    const double r = residual(p, a);
    out.min_hypercube = std::min(out.min_hypercube, f);
    out.max_hypercube = std::max(out.max_hypercube, f);
    out.min_residual = std::min(out.min_residual, r);
    if (r == 0.0) {
      out.u_star = std::max(out.u_star, f);
      if (f < best_f) {
        best_f = f;
        out.best_x = x;
      }
    } else {
      out.ell_star = std::min(out.ell_star, f);
    }
  });

  out.delta_empty = !std::isfinite(best_f);
  out.delta_c_empty = !std::isfinite(out.ell_star);
  if (out.delta_empty) {
    out.solution.status = SolveStatus::Infeasible;
    out.solution.objective = inf;
    out.solution.residual = out.min_residual;
  } else {
    out.solution.status = SolveStatus::Optimal;
    out.solution.x01 = pm1_to_01(out.best_x);
    out.solution.objective = best_f;
    out.solution.residual = 0.0;
  }
  return out;
}

}  // namespace expedis
