#include "expedis/maxcut.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>

namespace expedis {

namespace {

// Exact maximum of x'Cx over {-1,1}^v with x[0] = +1, by Gray-code walk.
std::pair<double, Vector> enumerate_quadratic_max(const Matrix& C) {
  const int v = static_cast<int>(C.rows());
  Vector x = Vector::Ones(v);
  Vector grad = C * x;  // grad_k = (Cx)_k
  double val = x.dot(grad);
  double best = val;
  Vector best_x = x;
  const std::uint64_t total = std::uint64_t{1} << (v - 1);
  for (std::uint64_t k = 1; k < total; ++k) {
    // flip coordinate ctz(k)+1 (vertex 0 stays fixed)
    const int f = __builtin_ctzll(k) + 1;
    val += -4.0 * x[f] * grad[f] + 4.0 * C(f, f);
    grad -= 2.0 * x[f] * C.col(f);
    x[f] = -x[f];
    if (val > best) {
      best = val;
      best_x = x;
    }
  }
  return {best, best_x};
}

double one_opt(const MaxCutInstance& g, Vector& x) {
  Vector grad = g.C * x;
  double val = x.dot(grad);
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 0; i < g.n_vertices; ++i) {
      const double gain = -4.0 * x[i] * grad[i] + 4.0 * g.C(i, i);
      if (gain > 1e-12) {
        val += gain;
        grad -= 2.0 * x[i] * g.C.col(i);
        x[i] = -x[i];
        improved = true;
      }
    }
  }
  return val;
}

}  // namespace

std::pair<double, Cut> brute_force_maxcut(const MaxCutInstance& g, int cap) {
  if (g.n_vertices > cap) throw ModelError("max-cut enumeration cap exceeded");
  auto [best, x] = enumerate_quadratic_max(g.C);
  return {best, Cut{x, best}};
}

RootRelaxation root_relaxation(const MaxCutInstance& g,
                               const CutBudget& budget) {
  RootRelaxation out;
  SdpProblem sp = SdpProblem::diag_e(g.n_vertices, g.C, SdpSense::Max);
  SdpSolution sol = cutting_plane_loop(sp, budget);
  if (sol.status != SdpStatus::Solved) {
    out.degraded = true;
    sol = solve(sp, budget.sdp_tol);
    if (sol.status != SdpStatus::Solved)
      sol = solve(sp, 1e-6);  // looser tolerance rescue
  }
  if (sol.status != SdpStatus::Solved) {
    // last resort: the positive-weight bound. Every cut satisfies
    // z = sum_{i<j} w_ij (1 - x_i x_j)/2 <= sum_{i<j} max(w_ij, 0).
    double ub = 0.0;
    for (int i = 0; i < g.n_vertices; ++i)
      for (int j = i + 1; j < g.n_vertices; ++j)
        ub += std::max(g.weights(i, j), 0.0);
    out.upper_bound = ub;
    out.X = Matrix::Identity(g.n_vertices, g.n_vertices);
    out.gram = out.X;
    return out;
  }
  out.upper_bound = safe_bound(sol, BoundDirection::Upper);
  out.X = sol.X;

  Eigen::SelfAdjointEigenSolver<Matrix> es(sol.X);
  Matrix V = es.eigenvectors() *
             es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
  // normalize rows so hyperplane rounding sees unit vectors
  for (int i = 0; i < V.rows(); ++i) {
    const double nrm = V.row(i).norm();
    if (nrm > 1e-12) V.row(i) /= nrm;
  }
  out.gram = V;
  return out;
}

Cut gw_round_and_improve(const Matrix& gram, const MaxCutInstance& g,
                         int trials, std::uint64_t seed) {
  Rng rng(seed);
  const int r = static_cast<int>(gram.cols());
  Cut best;
  best.value = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    Vector h(r);
    for (int i = 0; i < r; ++i) h[i] = rng.normal();
    Vector x(g.n_vertices);
    for (int i = 0; i < g.n_vertices; ++i)
      x[i] = gram.row(i).dot(h) >= 0.0 ? 1.0 : -1.0;
    const double val = one_opt(g, x);
    if (val > best.value) {
      best.value = val;
      best.xbar = x;
    }
  }
  return best;
}

namespace {

struct Node {
  Matrix C;      // reduced coupling matrix; x'Cx equals the original
                 // cut value (diagonal entries carry the constants
                 // folded in by contractions)
  Vector rep;    // original vertex -> reduced index
  Vector sgn;    // original vertex -> sign relative to its rep
  double bound;  // upper bound on max x'Cx over the reduced hypercube
  int pick;      // branching vertex chosen at evaluation time
  long id;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;  // best-first
    return a.id > b.id;
  }
};

// Substitute x[j] = s * x[i] into x'Cx and drop index j. The folded
// (i,i) entry absorbs the cross terms, so no separate constant appears.
Matrix contract(const Matrix& C, int i, int j, double s) {
  const int v = static_cast<int>(C.rows());
  Matrix W = C;
  W.row(i) += s * W.row(j);
  W.col(i) += s * W.col(j);
  Matrix R(v - 1, v - 1);
  int ri = 0;
  for (int a = 0; a < v; ++a) {
    if (a == j) continue;
    int rj = 0;
    for (int b = 0; b < v; ++b) {
      if (b == j) continue;
      R(ri, rj++) = W(a, b);
    }
    ++ri;
  }
  return R;
}

Vector expand_cut(const Node& node, const Vector& xred) {
  const int n = static_cast<int>(node.rep.size());
  Vector x(n);
  for (int v = 0; v < n; ++v)
    x[v] = node.sgn[v] * xred[static_cast<int>(node.rep[v])];
  return x;
}

}  // namespace

SolveReport solve_maxcut(const MaxCutInstance& g, const SolverConfig& cfg) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(clock::now() - t0).count();
  };

  const int n = g.n_vertices;
  SolveReport rep;
  rep.z_lb = -std::numeric_limits<double>::infinity();

  // cut values are integral when all weights are, which allows pruning
  // at gap < 1 instead of a floating tolerance
  bool int_weights = true;
  for (int i = 0; i < n && int_weights; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(g.weights(i, j) - std::round(g.weights(i, j))) > 1e-9) {
        int_weights = false;
        break;
      }
  auto prune_tol = [&] {
    return int_weights ? 0.5 : 1e-7 * (1.0 + std::abs(rep.z_lb));
  };
  // margin keeping the early-infeasibility test strictly on the safe
  // side of the pruning slack
  const double fire_margin =
      cfg.early_cutoff ? 1e-6 * (1.0 + std::abs(*cfg.early_cutoff)) : 0.0;

  auto try_incumbent = [&](const Vector& xbar, double value) {
    if (value > rep.z_lb) {
      rep.z_lb = value;
      rep.best_cut = Cut{xbar, value};
    }
  };

  if (n == 1) {
    try_incumbent(Vector::Ones(1), g.C(0, 0));
    rep.z_ub = rep.z_lb;
    rep.nodes = 1;
    return rep;
  }

  bool root_seen = false;
  // Evaluates a node: enumerates small ones, otherwise bounds + rounds.
  // Returns false when the node is closed.
  auto process = [&](Node& node) -> bool {
    ++rep.nodes;
    const int v = static_cast<int>(node.C.rows());
    if (v <= cfg.leaf_enumeration) {
      auto [val, xr] = enumerate_quadratic_max(node.C);
      try_incumbent(expand_cut(node, xr), val);
      node.bound = val;
      return false;
    }
    MaxCutInstance sub;
    sub.n_vertices = v;
    sub.C = node.C;
    RootRelaxation rr = root_relaxation(sub, cfg.bound_budget);
    node.bound = rr.upper_bound;
    Cut c = gw_round_and_improve(
        rr.gram, sub, cfg.gw_trials,
        cfg.seed + static_cast<std::uint64_t>(node.id));
    try_incumbent(expand_cut(node, c.xbar), c.value);
    if (!root_seen) {
      root_seen = true;
      rep.root_gap = rr.upper_bound - c.value;
    }
    if (node.bound <= rep.z_lb + prune_tol()) return false;
    // branch on the vertex whose correlation with vertex 0 is most
    // ambiguous; ties broken by lowest index
    node.pick = 1;
    double best_amb = std::numeric_limits<double>::infinity();
    for (int i = 1; i < v; ++i) {
      const double amb = std::abs(rr.X(0, i));
      if (amb < best_amb - 1e-12) {
        best_amb = amb;
        node.pick = i;
      }
    }
    return true;
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 1;

  Node root;
  root.C = g.C;
  root.rep = Vector::LinSpaced(n, 0, n - 1);
  root.sgn = Vector::Ones(n);
  root.id = 0;
  if (process(root)) open.push(root);

  while (!open.empty()) {
    rep.z_ub = std::max(rep.z_lb, open.top().bound);
    if (cfg.early_cutoff && rep.z_ub < *cfg.early_cutoff - fire_margin) {
      rep.status = MaxCutStatus::EarlyInfeasible;
      return rep;
    }
    if (elapsed() > cfg.time_limit || rep.nodes >= cfg.node_limit) {
      rep.status = MaxCutStatus::TimeLimit;
      return rep;
    }
    Node node = open.top();
    open.pop();
    if (node.bound <= rep.z_lb + prune_tol()) continue;

    for (double s : {1.0, -1.0}) {
      Node child;
      child.id = next_id++;
      child.C = contract(node.C, 0, node.pick, s);
      child.rep = node.rep;
      child.sgn = node.sgn;
      for (int vtx = 0; vtx < child.rep.size(); ++vtx) {
        const int r = static_cast<int>(child.rep[vtx]);
        if (r == node.pick) {
          child.rep[vtx] = 0;
          child.sgn[vtx] *= s;
        } else if (r > node.pick) {
          child.rep[vtx] = r - 1;
        }
      }
      if (process(child)) open.push(child);
    }
  }

  rep.z_ub = rep.z_lb;  // tree exhausted: the gap is closed
  rep.status = MaxCutStatus::Optimal;
  return rep;
}

std::optional<AssignmentPm1> feasible_from_cut(const Cut& cut,
                                               const MaxCutInstance& g,
                                               double rho,
                                               const BqpPm1Instance& p) {
  if (cut.value < g.constant - rho - 1e-9) return std::nullopt;
  AssignmentPm1 a = cut_to_assignment(cut);
  if (residual(p, a) != 0.0)
    throw ModelError(
        "cut above the feasibility threshold maps to an infeasible point; "
        "the (rho, sigma) pair is invalid");
  return a;
}

}  // namespace expedis
