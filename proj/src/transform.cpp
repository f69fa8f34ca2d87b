#include "expedis/transform.hpp"

namespace expedis {

QMatrix build_q(const BqpPm1Instance& p, double sigma) {
  if (sigma < 0.0 || (sigma == 0.0 && p.m > 0))
    throw ModelError("penalty parameter must be positive");
  const int n = p.n;
  QMatrix q;
  q.Q = Matrix::Zero(n + 1, n + 1);
  const Vector lin =
      p.m > 0 ? Vector(p.c - 2.0 * sigma * p.A.transpose() * p.b) : p.c;
  q.Q(0, 0) = p.alpha + (p.m > 0 ? sigma * p.b.squaredNorm() : 0.0);
  q.Q.block(0, 1, 1, n) = 0.5 * lin.transpose();
  q.Q.block(1, 0, n, 1) = 0.5 * lin;
  q.Q.block(1, 1, n, n) =
      p.m > 0 ? Matrix(p.F + sigma * p.A.transpose() * p.A) : p.F;
  q.const_eQe = q.Q.sum();
  return q;
}

MaxCutInstance to_maxcut(const QMatrix& q, std::optional<double> rho) {
  const int nv = static_cast<int>(q.Q.rows());
  MaxCutInstance g;
  g.n_vertices = nv;
  // adjacency = 4 * offdiagonal(Q), per the penalized-form expansion
  g.weights = 4.0 * q.Q;
  g.weights.diagonal().setZero();
  g.C = 0.25 * (Matrix(g.weights.rowwise().sum().asDiagonal()) - g.weights);
  g.constant = q.const_eQe;
  if (rho) g.rho_cutoff = q.const_eQe - *rho;
  return g;
}

double cut_value(const MaxCutInstance& g, const Vector& xbar) {
  return xbar.dot(g.C * xbar);
}

AssignmentPm1 cut_to_assignment(const Cut& cut) {
  const double s = cut.xbar[0] < 0.0 ? -1.0 : 1.0;
  return AssignmentPm1{s * cut.xbar.tail(cut.xbar.size() - 1)};
}

}  // namespace expedis
