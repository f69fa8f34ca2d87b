#include "expedis/sdp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

namespace expedis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Largest step alpha with X + alpha*D psd, given the Cholesky factor of X.
double max_psd_step(const Eigen::LLT<Matrix>& lltX, const Matrix& D) {
  const Matrix& L = lltX.matrixL();
  Matrix S = L.triangularView<Eigen::Lower>().solve(D);
  S = L.triangularView<Eigen::Lower>().solve(S.transpose().eval());
  Eigen::SelfAdjointEigenSolver<Matrix> es(S, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  return lmin >= -1e-14 ? kInf : -1.0 / lmin;
}

double max_lp_step(const Vector& x, const Vector& d) {
  double a = kInf;
  for (int i = 0; i < x.size(); ++i)
    if (d[i] < 0.0) a = std::min(a, -x[i] / d[i]);
  return a;
}

}  // namespace

void SdpProblem::add_eq_matrix(const Matrix& M, double rhs) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(M);
  const Vector& ev = es.eigenvalues();
  int nz = 0, idx = -1;
  const double cut = 1e-10 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (int i = 0; i < ev.size(); ++i)
    if (std::abs(ev[i]) > cut) {
      ++nz;
      idx = i;
    }
  if (nz > 1) throw SdpError("constraint matrix is not rank one");
  if (nz == 0) {
    eq_constraints.push_back({Vector::Zero(dim), rhs});
    return;
  }
  if (ev[idx] < 0.0)
    eq_constraints.push_back(
        {std::sqrt(-ev[idx]) * es.eigenvectors().col(idx), -rhs});
  else
    eq_constraints.push_back(
        {std::sqrt(ev[idx]) * es.eigenvectors().col(idx), rhs});
}

SdpProblem SdpProblem::diag_e(int dim, const Matrix& C, SdpSense sense) {
  SdpProblem p;
  p.dim = dim;
  p.objective = C;
  p.sense = sense;
  p.eq_constraints.reserve(dim);
  for (int j = 0; j < dim; ++j)
    p.eq_constraints.push_back({Vector::Unit(dim, j), 1.0});
  return p;
}

SdpSolution solve(const SdpProblem& p, double tol) {
  SdpOptions o;
  o.tol = tol;
  return solve(p, o);
}

SdpSolution solve(const SdpProblem& p, const SdpOptions& opts) {
  const int d = p.dim;
  if (d < 1) throw SdpError("empty SDP");
  if (d > opts.dim_cap) throw SdpError("SDP dimension above cap");
  if (opts.tol <= 0.0 || opts.tol > 1e-2) throw SdpError("tolerance out of range");

  const int ne = static_cast<int>(p.eq_constraints.size());
  const int k = static_cast<int>(p.ineq_cuts.size());

  SdpSolution out;
  out.tol = opts.tol;
  out.eq_duals = Vector::Zero(ne);
  out.cut_duals = Vector::Zero(k);

  const double flip = p.sense == SdpSense::Max ? -1.0 : 1.0;
  const Matrix C = flip * p.objective;

  // Assemble the constraint vector matrix; vacuous rows (a = 0, rhs = 0)
  // are skipped, a = 0 with rhs != 0 or a negative rhs on <aa',X> is an
  // immediate infeasibility witness.
  std::vector<int> live;
  for (int i = 0; i < ne + k; ++i) {
    const LinearTerm& t =
        i < ne ? p.eq_constraints[i] : p.ineq_cuts[i - ne];
    const double nrm = t.a.norm();
    if (nrm <= 1e-12) {
      const bool bad = i < ne ? std::abs(t.rhs) > 1e-9 : t.rhs > 1e-9;
      if (bad) {
        out.status = SdpStatus::Infeasible;
        out.infeasible_row = i;
        return out;
      }
      continue;
    }
    if (i < ne && t.rhs < -1e-9) {
      out.status = SdpStatus::Infeasible;
      out.infeasible_row = i;
      return out;
    }
    live.push_back(i);
  }

  const int q = static_cast<int>(live.size());
  if (q == 0) {
    // Unconstrained over the psd cone: bounded iff C is psd (min sense).
    Eigen::SelfAdjointEigenSolver<Matrix> es(C, Eigen::EigenvaluesOnly);
    out.status = es.eigenvalues().minCoeff() >= -opts.tol
                     ? SdpStatus::Solved
                     : SdpStatus::Unbounded;
    out.X = Matrix::Zero(d, d);
    out.value = 0.0;
    out.dual_value = 0.0;
    return out;
  }

  Matrix G(d, q);
  Vector rhs(q);
  std::vector<bool> is_cut(q, false);
  for (int c = 0; c < q; ++c) {
    const int i = live[c];
    const LinearTerm& t =
        i < ne ? p.eq_constraints[i] : p.ineq_cuts[i - ne];
    G.col(c) = t.a;
    rhs[c] = t.rhs;
    is_cut[c] = i >= ne;
  }
  int ncut = 0;
  for (bool b : is_cut) ncut += b;

  // slack index of cut row c (or -1)
  std::vector<int> slack_of(q, -1);
  {
    int j = 0;
    for (int c = 0; c < q; ++c)
      if (is_cut[c]) slack_of[c] = j++;
  }

  // Interior starting point, scaled to the data.
  const double rhs_scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
  const double bp = std::max({10.0, std::sqrt(double(d)), 2.0 * rhs_scale});
  const double bd =
      std::max({10.0, std::sqrt(double(d)), C.norm() / std::sqrt(double(d))});

  Matrix X = bp * Matrix::Identity(d, d);
  Matrix Z = bd * Matrix::Identity(d, d);
  Vector y = Vector::Zero(q);
  Vector s = Vector::Constant(ncut, bp);
  Vector t = Vector::Constant(ncut, bd);

  const double Cnorm = 1.0 + C.norm();
  const double bnorm = 1.0 + rhs.norm();

  auto apply_A = [&](const Matrix& M, const Vector& sl) {
    Vector r(q);
    Matrix GM = G.transpose() * M;  // q x d
    for (int c = 0; c < q; ++c) r[c] = GM.row(c).dot(G.col(c));
    for (int c = 0; c < q; ++c)
      if (slack_of[c] >= 0) r[c] -= sl[slack_of[c]];
    return r;
  };
  auto apply_At = [&](const Vector& v) -> Matrix {
    return G * v.asDiagonal() * G.transpose();
  };

  double mu = 0.0;
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    out.iterations = iter + 1;

    Vector rp = rhs - apply_A(X, s);
    Matrix Rd = C - apply_At(y) - Z;
    Vector rdlp(ncut);
    for (int c = 0; c < q; ++c)
      if (slack_of[c] >= 0) rdlp[slack_of[c]] = y[c] - t[slack_of[c]];

    const double pobj = (C.array() * X.array()).sum();
    const double dobj = rhs.dot(y);
    mu = ((X.array() * Z.array()).sum() + s.dot(t)) / double(d + ncut);

    out.kkt.primal = rp.norm() / bnorm;
    out.kkt.dual = std::sqrt(Rd.squaredNorm() + rdlp.squaredNorm()) / Cnorm;
    out.kkt.gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

    if (out.kkt.primal <= opts.tol && out.kkt.dual <= opts.tol &&
        out.kkt.gap <= opts.tol) {
      out.status = SdpStatus::Solved;
      break;
    }
    // Divergence of the dual iterate with a stubborn primal residual is
    // taken as primal infeasibility.
    if (y.cwiseAbs().maxCoeff() > 1e10 &&
        out.kkt.primal > std::sqrt(opts.tol)) {
      out.status = SdpStatus::Infeasible;
      break;
    }
    if (std::abs(pobj) > 1e12) {
      out.status = SdpStatus::Unbounded;
      break;
    }

    Eigen::LLT<Matrix> lltZ(Z);
    Eigen::LLT<Matrix> lltX(X);
    if (lltZ.info() != Eigen::Success || lltX.info() != Eigen::Success) {
      out.status = SdpStatus::MaxIter;
      break;
    }
    Matrix ZiG = lltZ.solve(G);
    Matrix U = G.transpose() * ZiG;   // G' Z^-1 G
    Matrix W = G.transpose() * X * G;  // G' X G
    Matrix M = U.cwiseProduct(W);
    for (int c = 0; c < q; ++c)
      if (slack_of[c] >= 0) M(c, c) += s[slack_of[c]] / t[slack_of[c]];
    M.diagonal().array() += 1e-13 * (1.0 + M.diagonal().cwiseAbs().maxCoeff());
    Eigen::LDLT<Matrix> ldlt(M);

    Matrix ZiRdX = lltZ.solve(Rd) * X;

    // One Newton solve for a given complementarity target (V, vlp).
    auto newton = [&](const Matrix& V, const Vector& vlp, Matrix& dX,
                      Vector& dy, Matrix& dZ, Vector& ds, Vector& dt) {
      Matrix ZiV = lltZ.solve(V);
      Vector r = rp;
      {
        Matrix T1 = G.transpose() * ZiV;    // q x d
        Matrix T2 = G.transpose() * ZiRdX;  // q x d
        for (int c = 0; c < q; ++c)
          r[c] += -T1.row(c).dot(G.col(c)) + T2.row(c).dot(G.col(c));
      }
      for (int c = 0; c < q; ++c)
        if (slack_of[c] >= 0) {
          const int j = slack_of[c];
          r[c] += vlp[j] / t[j] - (s[j] / t[j]) * rdlp[j];
        }
      dy = ldlt.solve(r);
      dZ = Rd - apply_At(dy);
      dX = ZiV - lltZ.solve(dZ) * X;
      dX = 0.5 * (dX + dX.transpose()).eval();
      dt.resize(ncut);
      ds.resize(ncut);
      for (int c = 0; c < q; ++c)
        if (slack_of[c] >= 0) {
          const int j = slack_of[c];
          dt[j] = rdlp[j] + dy[c];
          ds[j] = (vlp[j] - s[j] * dt[j]) / t[j];
        }
    };

    // Mehrotra predictor
    Matrix dXa, dZa;
    Vector dya, dsa, dta;
    newton(-Z * X, (-s.array() * t.array()).matrix(), dXa, dya, dZa, dsa, dta);

    double ap = std::min({1.0, max_psd_step(lltX, dXa), max_lp_step(s, dsa)});
    double ad = std::min({1.0, max_psd_step(lltZ, dZa), max_lp_step(t, dta)});
    const double mu_aff =
        (((X + ap * dXa).array() * (Z + ad * dZa).array()).sum() +
         (s + ap * dsa).dot(t + ad * dta)) /
        double(d + ncut);
    double sigma = std::pow(std::max(mu_aff, 0.0) / mu, 3.0);
    sigma = std::min(1.0, std::max(sigma, 1e-8));

    // Corrector
    Matrix dX, dZ;
    Vector dy, ds, dt;
    Matrix V = sigma * mu * Matrix::Identity(d, d) - Z * X - dZa * dXa;
    Vector vlp = (sigma * mu - s.array() * t.array() - dsa.array() * dta.array())
                     .matrix();
    newton(V, vlp, dX, dy, dZ, ds, dt);

    ap = 0.95 * std::min({max_psd_step(lltX, dX), max_lp_step(s, ds)});
    ad = 0.95 * std::min({max_psd_step(lltZ, dZ), max_lp_step(t, dt)});
    ap = std::min(1.0, ap);
    ad = std::min(1.0, ad);

    X += ap * dX;
    s += ap * ds;
    y += ad * dy;
    Z += ad * dZ;
    t += ad * dt;
  }

  out.X = X;
  out.value = flip * (C.array() * X.array()).sum();
  out.dual_value = flip * rhs.dot(y);
  for (int c = 0; c < q; ++c) {
    if (live[c] < ne)
      out.eq_duals[live[c]] = y[c];
    else
      out.cut_duals[live[c] - ne] = y[c];
  }
  return out;
}

double safe_bound(const SdpSolution& s, BoundDirection direction) {
  if (s.status != SdpStatus::Solved)
    throw SdpError("safe_bound requires a Solved SDP");
  const double shift = s.tol * (1.0 + std::abs(s.dual_value));
  return direction == BoundDirection::Lower ? s.dual_value - shift
                                            : s.dual_value + shift;
}

}  // namespace expedis
