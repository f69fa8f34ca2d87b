#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "expedis/bench.hpp"
#include "expedis/instances.hpp"
#include "expedis/io.hpp"

namespace {

constexpr int kExitOptimal = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitTimeLimit = 3;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

expedis::FileFormat format_of(const std::string& path) {
  return path.size() > 5 && path.substr(path.size() - 5) == ".json"
             ? expedis::FileFormat::Json
             : expedis::FileFormat::Native;
}

void print_vector(const Eigen::VectorXd& v) {
  for (int i = 0; i < v.size(); ++i)
    std::cout << (i ? " " : "") << static_cast<long long>(std::lround(v(i)));
  std::cout << '\n';
}

int run_solve(const std::string& path, const std::string& mode,
              double epsilon, double time_limit, bool least_violation,
              bool crosscheck, bool has_epsilon) {
  expedis::Bqp01Instance p = expedis::read_instance(path, format_of(path));
  expedis::PipelineConfig cfg;
  if (mode == "las") cfg.penalty_mode = expedis::PenaltyChoice::Las;
  else if (mode == "cli") cfg.penalty_mode = expedis::PenaltyChoice::Cli;
  else if (mode == "gw") cfg.penalty_mode = expedis::PenaltyChoice::Gw;
  else cfg.penalty_mode = expedis::PenaltyChoice::Auto;
  if (has_epsilon) cfg.epsilon = epsilon;
  cfg.solver.time_limit = time_limit;
  cfg.least_violation = least_violation;
  cfg.brute_force_crosscheck = crosscheck;

  expedis::Outcome out = expedis::expedis_solve(p, cfg);
  std::cout << "status " << expedis::status_name(out.solution.status) << '\n';
  std::printf("sigma %.12g\n", out.parameters_used.sigma);
  if (out.parameters_used.rho)
    std::printf("rho %.12g\n", *out.parameters_used.rho);
  if (out.solution.x01) {
    std::printf("objective %.12g\n", out.solution.objective);
    std::printf("residual %.12g\n", out.solution.residual);
    std::cout << "y ";
    print_vector(*out.solution.x01);
  }
  std::cout << "nodes " << out.maxcut_report.nodes << '\n';
  for (const auto& t : out.timeline)
    std::printf("time_%s %.3f\n", t.stage.c_str(), t.seconds);

  switch (out.solution.status) {
    case expedis::SolveStatus::Infeasible: return kExitInfeasible;
    case expedis::SolveStatus::TimeLimit: return kExitTimeLimit;
    default: return kExitOptimal;
  }
}

int run_bounds(const std::string& path) {
  expedis::Bqp01Instance p01 = expedis::read_instance(path, format_of(path));
  expedis::BqpPm1Instance p = expedis::to_plus_minus_one(p01);
  auto timed = [](auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    auto v = fn();
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return std::pair(v, s);
  };
  auto [shor, t_shor] = timed([&] { return expedis::shor_bounds(p); });
  std::printf("ell_shor %.12g\nu_shor %.12g\ntime_shor %.3f\n", shor.ell,
              shor.u, t_shor);
  auto [strong, t_strong] =
      timed([&] { return expedis::strengthened_bounds(p); });
  std::printf("ell_cuts %.12g\nu_cuts %.12g\ntime_cuts %.3f\n", strong.ell,
              strong.u, t_strong);
  if (p.m > 0) {
    auto [proj, t_proj] =
        timed([&] { return expedis::projected_upper_bound(p); });
    if (std::holds_alternative<expedis::InfeasibleCertificate>(proj)) {
      std::printf("u_feasible infeasible-certificate\ntime_proj %.3f\n",
                  t_proj);
      return kExitInfeasible;
    }
    std::printf("u_feasible %.12g\ntime_proj %.3f\n",
                std::get<expedis::BoundPair>(proj).u, t_proj);
  }
  return kExitOptimal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact penalty reduction of constrained binary quadratic "
               "problems to max-cut"};
  app.require_subcommand(1);

  // solve
  std::string solve_path, solve_mode = "auto";
  double solve_eps = 0.0, solve_tl = 600.0;
  bool solve_lv = false, solve_cc = false;
  auto* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("file", solve_path)->required();
  solve->add_option("--mode", solve_mode)
      ->check(CLI::IsMember({"las", "cli", "gw", "auto"}));
  auto* eps_opt = solve->add_option("--epsilon", solve_eps);
  solve->add_option("--time-limit", solve_tl);
  solve->add_flag("--least-violation", solve_lv);
  solve->add_flag("--crosscheck", solve_cc);

  // transform
  std::string tr_path, tr_out;
  bool tr_scale = false;
  double tr_sigma = 0.0;
  auto* transform =
      app.add_subcommand("transform", "export the max-cut reduction");
  transform->add_option("file", tr_path)->required();
  transform->add_option("--out", tr_out)->required();
  transform->add_flag("--scale-int", tr_scale);
  auto* sigma_opt = transform->add_option("--sigma", tr_sigma,
                                          "penalty weight (default: gw)");

  // bounds
  std::string bd_path;
  auto* bounds = app.add_subcommand("bounds", "print bound ladder");
  bounds->add_option("file", bd_path)->required();

  // generate
  auto* generate = app.add_subcommand("generate", "write a random instance");
  std::string gen_out;
  expedis::RgiSpec rgi;
  int gen_family = 1;
  auto* gen_rgi_cmd = generate->add_subcommand("rgi");
  gen_rgi_cmd->add_option("--out", gen_out)->required();
  gen_rgi_cmd->add_option("--family", gen_family)->check(CLI::Range(1, 2));
  gen_rgi_cmd->add_option("--n", rgi.n);
  gen_rgi_cmd->add_option("--m", rgi.m);
  gen_rgi_cmd->add_option("--a-lo", rgi.a_lo);
  gen_rgi_cmd->add_option("--a-hi", rgi.a_hi);
  gen_rgi_cmd->add_option("--f-lo", rgi.f_lo);
  gen_rgi_cmd->add_option("--f-hi", rgi.f_hi);
  gen_rgi_cmd->add_option("--b", rgi.b_v);
  gen_rgi_cmd->add_option("--seed", rgi.seed);
  std::string kc_out;
  int kc_k = 5;
  auto* gen_kc = generate->add_subcommand("kcluster", "Petersen k-cluster");
  gen_kc->add_option("--out", kc_out)->required();
  gen_kc->add_option("--k", kc_k);
  std::string cb_out;
  int cb_n = 10, cb_k = 2;
  std::uint64_t cb_seed = 1;
  auto* gen_cb = generate->add_subcommand("cbqp");
  gen_cb->add_option("--out", cb_out)->required();
  gen_cb->add_option("--n", cb_n);
  gen_cb->add_option("--k", cb_k);
  gen_cb->add_option("--seed", cb_seed);
  generate->require_subcommand(1);

  // bench
  std::string bench_path;
  auto* bench = app.add_subcommand("bench", "run a benchmark suite");
  bench->add_option("suite", bench_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*solve)
      return run_solve(solve_path, solve_mode, solve_eps, solve_tl, solve_lv,
                       solve_cc, eps_opt->count() > 0);
    if (*transform) {
      expedis::Bqp01Instance p01 =
          expedis::read_instance(tr_path, format_of(tr_path));
      expedis::BqpPm1Instance p = expedis::to_plus_minus_one(p01);
      double sigma = tr_sigma;
      if (sigma_opt->count() == 0) {
        const expedis::BoundPair bp = expedis::trivial_bounds(p);
        sigma = expedis::gw_params(bp, expedis::default_epsilon(p, bp)).sigma;
      }
      if (p.m == 0 && sigma_opt->count() == 0) sigma = 0.0;
      expedis::MaxCutInstance g =
          expedis::to_maxcut(expedis::build_q(p, sigma));
      const auto info = expedis::export_maxcut(g, tr_out, tr_scale);
      std::printf("vertices %d\nsigma %.12g\nscale %.12g\n", g.n_vertices,
                  sigma, info.scale);
      if (info.scale_failed)
        std::cout << "warning: no integer scale <= 4096, wrote raw weights\n";
      return kExitOptimal;
    }
    if (*bounds) return run_bounds(bd_path);
    if (*generate) {
      if (*gen_rgi_cmd) {
        rgi.family = gen_family == 2 ? expedis::RgiSpec::Family::Two
                                     : expedis::RgiSpec::Family::One;
        expedis::write_instance(expedis::gen_rgi(rgi), gen_out,
                                format_of(gen_out));
        std::cout << "wrote " << gen_out << '\n';
      } else if (*gen_kc) {
        expedis::write_instance(
            expedis::build_k_cluster(expedis::petersen_graph(), kc_k), kc_out,
            format_of(kc_out));
        std::cout << "wrote " << kc_out << '\n';
      } else if (*gen_cb) {
        expedis::Rng rng(cb_seed);
        expedis::Matrix Q(cb_n, cb_n);
        expedis::Vector q(cb_n);
        for (int i = 0; i < cb_n; ++i)
          for (int j = i; j < cb_n; ++j)
            Q(i, j) = Q(j, i) = rng.uniform_int(-5, 5);
        for (int i = 0; i < cb_n; ++i) q(i) = rng.uniform_int(-5, 5);
        expedis::write_instance(expedis::build_cbqp(Q, q, cb_k), cb_out,
                                format_of(cb_out));
        std::cout << "wrote " << cb_out << '\n';
      }
      return kExitOptimal;
    }
    if (*bench) {
      const auto out = expedis::bench_run(bench_path);
      std::cout << out.records.size() << " runs\n";
      for (const auto& f : out.files_written) std::cout << "wrote " << f << '\n';
      return kExitOptimal;
    }
  } catch (const expedis::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const expedis::ModelError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
