#pragma once

#include <string>
#include <vector>

#include "expedis/pipeline.hpp"

namespace expedis {

/// One solver run; rows are append-only in the CSV log.
struct ResultRecord {
  std::string id;
  int n = 0;
  int m = 0;
  std::string mode;
  double sigma = 0.0;
  double rho = 0.0;  // NaN when the mode carries no threshold
  std::string status;
  double objective = 0.0;
  long nodes = 0;
  double seconds = 0.0;
  std::uint64_t seed = 0;
  bool failed = false;  // exception during the run; row kept, run continues
  std::string error;
};

struct BenchOutputs {
  std::vector<ResultRecord> records;
  std::vector<std::string> files_written;  // results CSV, profiles, ratios
};

/// Suite file (JSON): {"output_dir", "modes": ["las"|"cli"|"gw"|"auto"],
/// "time_limit", "instances": [{"id", "path"} | {"id", "rgi": {...}}]}.
/// Runs every instance under every mode; workers capped by the
/// EXPEDIS_WORKERS environment variable (default 1). Emits results.csv,
/// a "(time, fraction solved)" profile per mode, and sigma-ratio columns
/// against the Lasserre sigma. Deterministic output ordering.
BenchOutputs bench_run(const std::string& suite_path);

std::string status_name(SolveStatus s);
std::string record_csv_header();
std::string record_csv_row(const ResultRecord& r);

}  // namespace expedis
