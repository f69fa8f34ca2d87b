#include "expedis/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "expedis/instances.hpp"
#include "expedis/io.hpp"
#include "json.hpp"

namespace expedis {

namespace {

PenaltyChoice choice_from_name(const std::string& s) {
  if (s == "las") return PenaltyChoice::Las;
  if (s == "cli") return PenaltyChoice::Cli;
  if (s == "gw") return PenaltyChoice::Gw;
  if (s == "auto") return PenaltyChoice::Auto;
  throw IoError("unknown penalty mode '" + s + "'");
}

RgiSpec rgi_from_json(const nlohmann::json& j) {
  RgiSpec s;
  s.family = j.value("family", 1) == 2 ? RgiSpec::Family::Two
                                       : RgiSpec::Family::One;
  s.n = j.value("n", s.n);
  s.m = j.value("m", s.m);
  s.a_lo = j.value("a_lo", s.a_lo);
  s.a_hi = j.value("a_hi", s.a_hi);
  s.f_lo = j.value("f_lo", s.f_lo);
  s.f_hi = j.value("f_hi", s.f_hi);
  s.b_v = j.value("b_v", s.b_v);
  s.seed = j.value("seed", s.seed);
  return s;
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(12);
  ss << v;
  return ss.str();
}

}  // namespace

std::string status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::LeastViolated: return "least_violated";
    case SolveStatus::TimeLimit: return "time_limit";
  }
  return "unknown";
}

// Wall times are deliberately kept out of this file (they live in
// results_timing.csv) so that reruns under the same seed reproduce
// results.csv byte-for-byte.
std::string record_csv_header() {
  return "id,n,m,mode,sigma,rho,status,objective,nodes,seed,error";
}

std::string record_csv_row(const ResultRecord& r) {
  std::ostringstream ss;
  ss << r.id << ',' << r.n << ',' << r.m << ',' << r.mode << ','
     << fmt(r.sigma) << ',' << (std::isnan(r.rho) ? "" : fmt(r.rho)) << ','
     << (r.failed ? "failed" : r.status) << ',' << fmt(r.objective) << ','
     << r.nodes << ',' << r.seed << ',' << r.error;
  return ss.str();
}

BenchOutputs bench_run(const std::string& suite_path) {
  nlohmann::json suite;
  {
    std::ifstream in(suite_path);
    if (!in) throw IoError(suite_path + ": cannot open");
    try {
      in >> suite;
    } catch (const nlohmann::json::exception& e) {
      throw IoError(suite_path + ": " + e.what());
    }
  }

  const std::string out_dir = suite.value("output_dir", std::string("."));
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> modes;
  for (const auto& m : suite.value("modes", nlohmann::json::array({"auto"})))
    modes.push_back(m.get<std::string>());
  const double time_limit = suite.value("time_limit", 600.0);

  struct Job {
    std::string id;
    Bqp01Instance instance;
    std::string mode;
  };
  std::vector<Job> jobs;
  for (const auto& item : suite.value("instances", nlohmann::json::array())) {
    const std::string id = item.at("id").get<std::string>();
    Bqp01Instance p;
    if (item.contains("path"))
      p = read_instance(item.at("path").get<std::string>());
    else if (item.contains("rgi"))
      p = gen_rgi(rgi_from_json(item.at("rgi")));
    else
      throw IoError(suite_path + ": instance '" + id + "' has no source");
    for (const auto& mode : modes) jobs.push_back({id, p, mode});
  }

  std::vector<ResultRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= jobs.size()) return;
      const Job& job = jobs[k];
      ResultRecord r;
      r.id = job.id;
      r.n = job.instance.n;
      r.m = job.instance.m;
      r.mode = job.mode;
      r.rho = std::nan("");
      PipelineConfig cfg;
      cfg.penalty_mode = choice_from_name(job.mode);
      cfg.solver.time_limit = time_limit;
      r.seed = cfg.solver.seed;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        Outcome out = expedis_solve(job.instance, cfg);
        r.sigma = out.parameters_used.sigma;
        if (out.parameters_used.rho) r.rho = *out.parameters_used.rho;
        r.status = status_name(out.solution.status);
        r.objective = out.solution.objective;
        r.nodes = out.maxcut_report.nodes;
      } catch (const std::exception& e) {
        r.failed = true;
        r.error = e.what();
      }
      r.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
      records[k] = std::move(r);
    }
  };

  int workers = 1;
  if (const char* env = std::getenv("EXPEDIS_WORKERS"))
    workers = std::max(1, std::atoi(env));
  workers = std::min<int>(workers, std::max<std::size_t>(jobs.size(), 1));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  BenchOutputs out;
  out.records = std::move(records);

  const std::string results_path = out_dir + "/results.csv";
  {
    std::ofstream csv(results_path);
    csv << record_csv_header() << '\n';
    for (const auto& r : out.records) csv << record_csv_row(r) << '\n';
  }
  out.files_written.push_back(results_path);

  const std::string timing_path = out_dir + "/results_timing.csv";
  {
    std::ofstream csv(timing_path);
    csv << "id,mode,seconds\n";
    for (const auto& r : out.records)
      csv << r.id << ',' << r.mode << ',' << fmt(r.seconds) << '\n';
  }
  out.files_written.push_back(timing_path);

  // Performance profile: per mode, cumulative fraction solved by time t.
  for (const auto& mode : modes) {
    std::vector<double> times;
    std::size_t total = 0;
    for (const auto& r : out.records)
      if (r.mode == mode) {
        ++total;
        if (!r.failed && r.status != "time_limit") times.push_back(r.seconds);
      }
    std::sort(times.begin(), times.end());
    const std::string path = out_dir + "/profile_" + mode + ".csv";
    std::ofstream prof(path);
    prof << "time,fraction_solved\n";
    for (std::size_t i = 0; i < times.size(); ++i)
      prof << fmt(times[i]) << ','
           << fmt(static_cast<double>(i + 1) / std::max<std::size_t>(total, 1))
           << '\n';
    out.files_written.push_back(path);
  }

  // Sigma ratios against the Lasserre run of the same instance, percent.
  std::map<std::string, double> las_sigma;
  for (const auto& r : out.records)
    if (r.mode == "las" && !r.failed) las_sigma[r.id] = r.sigma;
  if (!las_sigma.empty()) {
    const std::string path = out_dir + "/sigma_ratios.csv";
    std::ofstream ratios(path);
    ratios << "id,mode,sigma,sigma_las,percent_of_las\n";
    for (const auto& r : out.records) {
      if (r.failed || r.mode == "las") continue;
      auto it = las_sigma.find(r.id);
      if (it == las_sigma.end() || it->second == 0.0) continue;
      ratios << r.id << ',' << r.mode << ',' << fmt(r.sigma) << ','
             << fmt(it->second) << ',' << fmt(100.0 * r.sigma / it->second)
             << '\n';
    }
    out.files_written.push_back(path);
  }
  return out;
}

}  // namespace expedis
