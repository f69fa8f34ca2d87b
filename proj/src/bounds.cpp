#include "expedis/bounds.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace expedis {

Matrix lifted_objective(const BqpPm1Instance& p) {
  Matrix Fp(p.n + 1, p.n + 1);
  Fp(0, 0) = p.alpha;
  Fp.block(0, 1, 1, p.n) = 0.5 * p.c.transpose();
  Fp.block(1, 0, p.n, 1) = 0.5 * p.c;
  Fp.block(1, 1, p.n, p.n) = p.F;
  return Fp;
}

SdpProblem shor_problem(const BqpPm1Instance& p, SdpSense sense) {
  return SdpProblem::diag_e(p.n + 1, lifted_objective(p), sense);
}

BoundPair trivial_bounds(const BqpPm1Instance& p) {
  const double spread =
      p.F.cwiseAbs().sum() + p.c.cwiseAbs().sum();
  BoundPair bp;
  bp.ell = p.alpha - spread;
  bp.u = p.alpha + spread;
  bp.scope_ell = EllScope::OverHypercube;
  bp.scope_u = UScope::OverHypercube;
  bp.provenance = BoundProvenance::Trivial;
  return bp;
}

BoundPair shor_bounds(const BqpPm1Instance& p, double tol) {
  SdpSolution lo = solve(shor_problem(p, SdpSense::Min), tol);
  SdpSolution hi = solve(shor_problem(p, SdpSense::Max), tol);
  if (lo.status != SdpStatus::Solved || hi.status != SdpStatus::Solved) {
    BoundPair bp = trivial_bounds(p);
    bp.sdp_fallback = true;
    return bp;
  }
  BoundPair bp;
  bp.ell = safe_bound(lo, BoundDirection::Lower);
  bp.u = safe_bound(hi, BoundDirection::Upper);
  bp.scope_ell = EllScope::OverHypercube;
  bp.scope_u = UScope::OverHypercube;
  bp.provenance = BoundProvenance::Shor;
  return bp;
}

BoundPair strengthened_bounds(const BqpPm1Instance& p,
                              const CutBudget& budget) {
  SdpSolution lo = cutting_plane_loop(shor_problem(p, SdpSense::Min), budget);
  SdpSolution hi = cutting_plane_loop(shor_problem(p, SdpSense::Max), budget);
  if (lo.status != SdpStatus::Solved || hi.status != SdpStatus::Solved) {
    BoundPair bp = shor_bounds(p, budget.sdp_tol);
    bp.sdp_fallback = true;
    return bp;
  }
  BoundPair bp;
  bp.ell = safe_bound(lo, BoundDirection::Lower);
  bp.u = safe_bound(hi, BoundDirection::Upper);
  // cuts only shrink the feasible set, so never report looser than Shor
  BoundPair shor = shor_bounds(p, budget.sdp_tol);
  if (!shor.sdp_fallback) {
    bp.ell = std::max(bp.ell, shor.ell);
    bp.u = std::min(bp.u, shor.u);
  }
  bp.scope_ell = EllScope::OverHypercube;
  bp.scope_u = UScope::OverHypercube;
  bp.provenance = BoundProvenance::ShorPlusCuts;
  return bp;
}

NullSpaceBasis null_space_basis(const Matrix& A, const Vector& b,
                                double tol) {
  const int n = static_cast<int>(A.cols());
  const int m = static_cast<int>(A.rows());
  NullSpaceBasis out;
  out.tol_used = tol;
  if (m == 0) {
    out.N = Matrix::Identity(n + 1, n + 1);
    out.rank_m = 0;
    return out;
  }
  Matrix M(m, n + 1);
  M.col(0) = b;
  M.rightCols(n) = -A;
  if (M.cwiseAbs().maxCoeff() == 0.0) {
    out.N = Matrix::Identity(n + 1, n + 1);
    out.rank_m = 0;
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullV);
  const double smax = svd.singularValues()[0];
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > tol * smax) ++rank;
  out.rank_m = rank;
  out.N = svd.matrixV().rightCols(n + 1 - rank);
  return out;
}

std::variant<BoundPair, InfeasibleCertificate> projected_upper_bound(
    const BqpPm1Instance& p, double tol) {
  if (p.m == 0) {
    BoundPair bp = shor_bounds(p, tol);
    bp.scope_u = UScope::OverFeasible;
    bp.provenance = BoundProvenance::Projected;
    return bp;
  }

  const NullSpaceBasis ns = null_space_basis(p.A, p.b, 1e-10);
  const int dim = static_cast<int>(ns.N.cols());
  if (dim == 0) return InfeasibleCertificate{0};

  SdpProblem sp;
  sp.dim = dim;
  sp.sense = SdpSense::Max;
  sp.objective = ns.N.transpose() * lifted_objective(p) * ns.N;
  sp.objective = 0.5 * (sp.objective + sp.objective.transpose()).eval();
  for (int j = 0; j <= p.n; ++j) {
    Vector row = ns.N.row(j).transpose();  // <(N_j)'N_j, P> = 1
    if (row.norm() <= 1e-12) return InfeasibleCertificate{j};
    sp.eq_constraints.push_back({row, 1.0});
  }

  SdpSolution sol = solve(sp, tol);
  if (sol.status == SdpStatus::Infeasible) {
    InfeasibleCertificate cert;
    cert.constraint_row = sol.infeasible_row.value_or(-1);
    return cert;
  }
  if (sol.status != SdpStatus::Solved) {
    BoundPair bp = strengthened_bounds(p);
    bp.sdp_fallback = true;
    bp.scope_u = UScope::OverFeasible;
    bp.provenance = BoundProvenance::Projected;
    return bp;
  }
  BoundPair bp;
  bp.ell = -std::numeric_limits<double>::infinity();  // not produced here
  bp.u = safe_bound(sol, BoundDirection::Upper);
  bp.scope_ell = EllScope::OverHypercube;
  bp.scope_u = UScope::OverFeasible;
  bp.provenance = BoundProvenance::Projected;
  return bp;
}

double hypercube_upper_bound(const BqpPm1Instance& p, double tol) {
  SdpSolution hi = solve(shor_problem(p, SdpSense::Max), tol);
  if (hi.status != SdpStatus::Solved) return trivial_bounds(p).u;
  return safe_bound(hi, BoundDirection::Upper);
}

}  // namespace expedis
