#include "expedis/pipeline.hpp"

#include <chrono>
#include <cmath>

namespace expedis {

namespace {

class StageClock {
 public:
  explicit StageClock(std::vector<StageTiming>& out) : out_(out) {}
  void mark(const std::string& stage) {
    const auto now = std::chrono::steady_clock::now();
    out_.push_back({stage, std::chrono::duration<double>(now - last_).count()});
    last_ = now;
  }

 private:
  std::vector<StageTiming>& out_;
  std::chrono::steady_clock::time_point last_ =
      std::chrono::steady_clock::now();
};

// Solves the max-cut instance and fills the part of the outcome shared
// by all penalty modes. Returns h* = e'Qe - z_lb.
double run_maxcut(const MaxCutInstance& g, const SolverConfig& cfg,
                  Outcome& out) {
  out.maxcut_report = solve_maxcut(g, cfg);
  return g.constant - out.maxcut_report.z_lb;
}

void fill_optimal(const BqpPm1Instance& q, const MaxCutInstance& g,
                  Outcome& out) {
  AssignmentPm1 a = cut_to_assignment(out.maxcut_report.best_cut);
  out.solution.x01 = pm1_to_01(a.x);
  out.solution.objective = g.constant - out.maxcut_report.z_lb;
  out.solution.residual = residual(q, a);
  out.solution.status = SolveStatus::Optimal;
}

// Drops the constraints so build_q accepts sigma = 0.
BqpPm1Instance without_constraints(const BqpPm1Instance& p) {
  BqpPm1Instance u = p;
  u.m = 0;
  u.A.resize(0, p.n);
  u.b.resize(0);
  return u;
}

// gw_params, but with sigma floored at epsilon: when u < ell the plain
// formula would go nonpositive, yet any positive sigma separates there.
PenaltyParameters gw_params_clamped(const BoundPair& bp, double epsilon) {
  PenaltyParameters pp = gw_params(bp, epsilon);
  if (pp.sigma < epsilon) pp.sigma = epsilon;
  return pp;
}

void crosscheck_or_throw(const BqpPm1Instance& q, const Outcome& out) {
  if (q.n > 25) return;
  BruteForceResult bf = brute_force_solve(q);
  const bool inf_out = out.solution.status == SolveStatus::Infeasible;
  if (inf_out != bf.delta_empty)
    throw ModelError("crosscheck failed: feasibility status mismatch");
  if (!inf_out &&
      std::abs(out.solution.objective - bf.solution.objective) > 1e-8)
    throw ModelError("crosscheck failed: objective mismatch");
}

}  // namespace

bool unconstrained_fast_path(const BoundPair& bp_u, const BoundPair& bp_l) {
  return bp_u.u < bp_l.ell;
}

Outcome expedis_solve(const Bqp01Instance& p, const PipelineConfig& cfg) {
  if (cfg.least_violation) return least_violated(p, cfg);

  Outcome out;
  StageClock clock(out.timeline);
  BqpPm1Instance q = to_plus_minus_one(p);
  clock.mark("transform");

  SolverConfig solver = cfg.solver;
  solver.bound_budget = cfg.bound_budget;

  // Unconstrained problems skip the penalty machinery entirely.
  if (q.m == 0) {
    out.unconstrained_path = true;
    MaxCutInstance g = to_maxcut(build_q(q, 0.0));
    run_maxcut(g, solver, out);
    clock.mark("maxcut");
    fill_optimal(q, g, out);
    if (out.maxcut_report.status == MaxCutStatus::TimeLimit)
      out.solution.status = SolveStatus::TimeLimit;
    out.solution.stats.nodes = out.maxcut_report.nodes;
    if (cfg.brute_force_crosscheck) crosscheck_or_throw(q, out);
    return out;
  }

  const BoundPair trivial = trivial_bounds(q);
  const double eps = cfg.epsilon ? *cfg.epsilon : default_epsilon(q, trivial);

  // Heuristic round with a provisional (trivial-bounds) penalty: a GW
  // cut that already lands in Delta licenses the cheaper sigma' solve.
  std::optional<AssignmentPm1> heuristic_feasible;
  if (cfg.penalty_mode == PenaltyChoice::Auto && cfg.enable_feasible_update) {
    const double sigma0 = gw_params(trivial, eps).sigma;
    MaxCutInstance g0 = to_maxcut(build_q(q, sigma0));
    RootRelaxation rr = root_relaxation(g0, cfg.bound_budget);
    Cut c = gw_round_and_improve(rr.gram, g0, solver.gw_trials, solver.seed);
    AssignmentPm1 a = cut_to_assignment(c);
    if (residual(q, a) == 0.0) heuristic_feasible = a;
  }
  clock.mark("heuristic");

  if (heuristic_feasible) {
    out.heuristic_update_fired = true;
    const BoundPair strong = strengthened_bounds(q, cfg.bound_budget);
    out.parameters_used =
        feasible_update(strong.ell, objective_pm1(q, *heuristic_feasible), eps);
    out.bounds_used = strong;
    clock.mark("bounds");
    MaxCutInstance g = to_maxcut(build_q(q, out.parameters_used.sigma));
    run_maxcut(g, solver, out);
    clock.mark("maxcut");
    fill_optimal(q, g, out);
    if (out.maxcut_report.status == MaxCutStatus::TimeLimit)
      out.solution.status = SolveStatus::TimeLimit;
    out.solution.stats.nodes = out.maxcut_report.nodes;
    if (cfg.brute_force_crosscheck) crosscheck_or_throw(q, out);
    return out;
  }

  // Bounds and parameters per the requested mode.
  BoundPair bp;
  if (cfg.penalty_mode == PenaltyChoice::Las) {
    bp = shor_bounds(q, cfg.bound_budget.sdp_tol);
    out.parameters_used = lasserre_params(bp);
  } else if (cfg.penalty_mode == PenaltyChoice::Cli) {
    bp = strengthened_bounds(q, cfg.bound_budget);
    out.parameters_used = gw_params(bp, eps);
    out.parameters_used.mode = PenaltyMode::Cli;
  } else {  // Gw and Auto
    const BoundPair strong = strengthened_bounds(q, cfg.bound_budget);
    auto proj = projected_upper_bound(q, cfg.bound_budget.sdp_tol);
    if (std::holds_alternative<InfeasibleCertificate>(proj)) {
      out.infeasible_by_certificate = true;
      out.bounds_used = strong;
      out.solution.status = SolveStatus::Infeasible;
      out.solution.residual = 0.0;
      clock.mark("bounds");
      if (cfg.brute_force_crosscheck) crosscheck_or_throw(q, out);
      return out;
    }
    bp = strong;
    bp.u = std::get<BoundPair>(proj).u;
    bp.scope_u = UScope::OverFeasible;
    bp.provenance = BoundProvenance::Projected;

    if (unconstrained_fast_path(std::get<BoundPair>(proj), strong)) {
      // u_Delta < ell over the hypercube: minimization alone forces
      // feasibility, provided Delta is nonempty -- verified below.
      MaxCutInstance g = to_maxcut(build_q(without_constraints(q), 0.0));
      Outcome probe = out;
      run_maxcut(g, solver, probe);
      AssignmentPm1 a = cut_to_assignment(probe.maxcut_report.best_cut);
      if (residual(q, a) == 0.0 &&
          probe.maxcut_report.status == MaxCutStatus::Optimal) {
        out = probe;
        out.unconstrained_path = true;
        out.bounds_used = bp;
        clock.mark("maxcut");
        fill_optimal(q, g, out);
        out.solution.stats.nodes = out.maxcut_report.nodes;
        if (cfg.brute_force_crosscheck) crosscheck_or_throw(q, out);
        return out;
      }
    }
    out.parameters_used = gw_params_clamped(bp, eps);
  }
  out.bounds_used = bp;
  clock.mark("bounds");

  const double rho = *out.parameters_used.rho;
  MaxCutInstance g =
      to_maxcut(build_q(q, out.parameters_used.sigma), rho);
  solver.early_cutoff = g.rho_cutoff;
  const double h_star = run_maxcut(g, solver, out);
  clock.mark("maxcut");
  out.solution.stats.nodes = out.maxcut_report.nodes;

  if (out.maxcut_report.status == MaxCutStatus::TimeLimit) {
    out.solution.status = SolveStatus::TimeLimit;
    if (out.maxcut_report.best_cut.xbar.size() > 0) {
      AssignmentPm1 a = cut_to_assignment(out.maxcut_report.best_cut);
      out.solution.x01 = pm1_to_01(a.x);
      out.solution.objective = g.constant - out.maxcut_report.z_lb;
      out.solution.residual = residual(q, a);
    }
    return out;
  }
  if (out.maxcut_report.status == MaxCutStatus::EarlyInfeasible ||
      h_star > rho + 1e-9) {
    out.solution.status = SolveStatus::Infeasible;
    if (cfg.brute_force_crosscheck) crosscheck_or_throw(q, out);
    return out;
  }
  fill_optimal(q, g, out);
  if (cfg.brute_force_crosscheck) crosscheck_or_throw(q, out);
  return out;
}

Outcome least_violated(const Bqp01Instance& p, const PipelineConfig& cfg) {
  Outcome out;
  StageClock clock(out.timeline);
  BqpPm1Instance q = to_plus_minus_one(p);
  clock.mark("transform");

  const BoundPair strong = strengthened_bounds(q, cfg.bound_budget);
  const double u_hyp = hypercube_upper_bound(q, cfg.bound_budget.sdp_tol);
  const double eps = cfg.epsilon ? *cfg.epsilon : default_epsilon(q, strong);
  out.parameters_used = least_violation_params(strong.ell, u_hyp, eps);
  out.bounds_used = strong;
  out.bounds_used.u = u_hyp;
  out.bounds_used.scope_u = UScope::OverHypercube;
  clock.mark("bounds");

  SolverConfig solver = cfg.solver;
  solver.bound_budget = cfg.bound_budget;
  MaxCutInstance g = to_maxcut(build_q(q, out.parameters_used.sigma));
  run_maxcut(g, solver, out);
  clock.mark("maxcut");
  out.solution.stats.nodes = out.maxcut_report.nodes;

  AssignmentPm1 a = cut_to_assignment(out.maxcut_report.best_cut);
  out.solution.x01 = pm1_to_01(a.x);
  out.solution.residual = residual(q, a);
  out.solution.objective = objective_pm1(q, a);
  if (out.maxcut_report.status == MaxCutStatus::TimeLimit)
    out.solution.status = SolveStatus::TimeLimit;
  else
    out.solution.status = out.solution.residual == 0.0
                              ? SolveStatus::Optimal
                              : SolveStatus::LeastViolated;
  return out;
}

}  // namespace expedis
