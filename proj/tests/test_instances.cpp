#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "expedis/bench.hpp"
#include "expedis/instances.hpp"
#include "expedis/io.hpp"
#include "expedis/pipeline.hpp"

using namespace expedis;

namespace {

// minimum of f over all binary y with exactly k ones, by enumeration
double constrained_minimum(const Bqp01Instance& p, int k) {
  double best = 1e100;
  const int n = p.n;
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != k) continue;
    Vector y(n);
    for (int i = 0; i < n; ++i) y(i) = (mask >> i) & 1;
    best = std::min(best, y.dot(p.F_hat * y) + p.c_hat.dot(y));
  }
  return best;
}

std::string tmp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("random generator respects its recipe") {
  RgiSpec s;
  s.n = 6;
  s.m = 2;
  s.a_lo = -3;
  s.a_hi = 3;
  s.f_lo = -7;
  s.f_hi = 7;
  s.seed = 42;
  Bqp01Instance p = gen_rgi(s);
  CHECK(p.c_hat.isZero(0.0));
  CHECK(p.b_hat.isZero(0.0));
  CHECK(p.F_hat.isApprox(p.F_hat.transpose(), 0.0));
  CHECK((p.A_hat.array().abs() <= 3.0).all());
  CHECK((p.F_hat.array().abs() <= 7.0).all());
  // family One keeps y = 0 feasible
  CHECK((p.A_hat * Vector::Zero(6)).isApprox(p.b_hat, 0.0));

  // degenerate interval produces the zero instance
  RgiSpec z;
  z.n = 1;
  z.m = 1;
  z.a_lo = z.a_hi = 0;
  z.f_lo = z.f_hi = 0;
  Bqp01Instance pz = gen_rgi(z);
  CHECK(pz.F_hat.isZero(0.0));
  CHECK(pz.A_hat.isZero(0.0));

  // determinism under the seed
  Bqp01Instance p2 = gen_rgi(s);
  CHECK(p.F_hat.isApprox(p2.F_hat, 0.0));
  CHECK(p.A_hat.isApprox(p2.A_hat, 0.0));
}

TEST_CASE("densest-k-subgraph encoding") {
  SUBCASE("triangle with k = 2 has one induced edge") {
    Matrix k3 = Matrix::Ones(3, 3) - Matrix::Identity(3, 3);
    Bqp01Instance p = build_k_cluster(k3, 2);
    CHECK(constrained_minimum(p, 2) == -1.0);  // negated edge count
  }
  SUBCASE("empty graph scores zero") {
    Bqp01Instance p = build_k_cluster(Matrix::Zero(4, 4), 2);
    CHECK(constrained_minimum(p, 2) == 0.0);
  }
  SUBCASE("10-vertex 3-regular reference graph, k = 5") {
    Bqp01Instance p = build_k_cluster(petersen_graph(), 5);
    // exhaustive check over all C(10,5) subsets
    const Matrix a = petersen_graph();
    int best = 0;
    for (int mask = 0; mask < 1024; ++mask) {
      if (__builtin_popcount(static_cast<unsigned>(mask)) != 5) continue;
      int edges = 0;
      for (int i = 0; i < 10; ++i)
        for (int j = i + 1; j < 10; ++j)
          if (((mask >> i) & 1) && ((mask >> j) & 1) && a(i, j) > 0.0)
            ++edges;
      best = std::max(best, edges);
    }
    CHECK(-constrained_minimum(p, 5) == static_cast<double>(best));
    // the pipeline agrees with the enumeration
    Outcome out = expedis_solve(p);
    REQUIRE(out.solution.status == SolveStatus::Optimal);
    CHECK(-out.solution.objective == doctest::Approx(best).epsilon(1e-9));
  }
}

TEST_CASE("cardinality-constrained quadratic encoding") {
  SUBCASE("pure linear case picks any k of the cheapest entries") {
    Bqp01Instance p =
        build_cbqp(Matrix::Zero(4, 4), -Vector::Ones(4), 2);
    CHECK(constrained_minimum(p, 2) == -2.0);
    // scaling the linear term scales the optimum
    Bqp01Instance p2 =
        build_cbqp(Matrix::Zero(4, 4), -2.0 * Vector::Ones(4), 2);
    CHECK(constrained_minimum(p2, 2) == -4.0);
  }
  SUBCASE("random instances match constrained enumeration") {
    for (std::uint64_t seed : {811u, 812u, 813u}) {
      Rng rng(seed);
      const int n = 8;
      Matrix Q(n, n);
      Vector q(n);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
          Q(i, j) = Q(j, i) = rng.uniform_int(-4, 4);
      for (int i = 0; i < n; ++i) q(i) = rng.uniform_int(-4, 4);
      const int k = 3;
      Bqp01Instance p = build_cbqp(Q, q, k);
      Outcome out = expedis_solve(p);
      REQUIRE(out.solution.status == SolveStatus::Optimal);
      CHECK(out.solution.objective ==
            doctest::Approx(constrained_minimum(p, k)).epsilon(1e-8));
    }
  }
}

TEST_CASE("instance files round-trip in both formats") {
  RgiSpec s;
  s.n = 5;
  s.m = 2;
  s.a_lo = -2;
  s.a_hi = 2;
  s.f_lo = -3;
  s.f_hi = 3;
  s.seed = 77;
  Bqp01Instance p = gen_rgi(s);
  p.c_hat << 1, -2, 0, 3, 0;
  for (FileFormat fmt : {FileFormat::Native, FileFormat::Json}) {
    Bqp01Instance r = parse_instance(format_instance(p, fmt), fmt);
    CHECK(r.n == p.n);
    CHECK(r.m == p.m);
    CHECK(r.F_hat.isApprox(p.F_hat, 0.0));
    CHECK(r.c_hat.isApprox(p.c_hat, 0.0));
    CHECK(r.A_hat.isApprox(p.A_hat, 0.0));
    CHECK(r.b_hat.isApprox(p.b_hat, 0.0));
  }
}

TEST_CASE("text format edge cases") {
  // unconstrained instance with nothing but the header
  Bqp01Instance p = parse_instance("2 0\n", FileFormat::Native);
  CHECK(p.n == 2);
  CHECK(p.m == 0);

  // the 1-D reference instance as a small file
  Bqp01Instance ref = parse_instance(
      "# one binary variable, one constraint\n"
      "1 1\n"
      "c 1 2\n"
      "A 1 1 1\n"
      "b 1 1\n",
      FileFormat::Native);
  CHECK(ref.c_hat(0) == 2.0);
  CHECK(ref.A_hat(0, 0) == 1.0);
  CHECK(ref.b_hat(0) == 1.0);

  CHECK_THROWS_AS(parse_instance("1 1\nF 2 1 1\n", FileFormat::Native),
                  IoError);
  CHECK_THROWS_AS(parse_instance("", FileFormat::Native), IoError);
}

TEST_CASE("graph export") {
  SUBCASE("reference reduction exports one integer edge") {
    Bqp01Instance p;
    p.n = 1;
    p.m = 1;
    p.F_hat = Matrix::Zero(1, 1);
    p.c_hat = Vector::Constant(1, 2.0);
    p.A_hat = Matrix::Constant(1, 1, 1.0);
    p.b_hat = Vector::Constant(1, 1.0);
    MaxCutInstance g = to_maxcut(build_q(to_plus_minus_one(p), 3.0));
    const std::string path = tmp_path("ref_graph.txt");
    MaxCutExport info = export_maxcut(g, path, true);
    CHECK(info.scaled);
    CHECK(info.scale == 1.0);
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line) && line[0] == '#') {
    }
    CHECK(line == "2 1");
    std::getline(in, line);
    CHECK(line == "1 2 -1");
    std::remove(path.c_str());
  }
  SUBCASE("empty graph writes a bare header") {
    MaxCutInstance g;
    g.n_vertices = 3;
    g.weights = Matrix::Zero(3, 3);
    const std::string path = tmp_path("empty_graph.txt");
    export_maxcut(g, path, false);
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line) && line[0] == '#') {
    }
    CHECK(line == "3 0");
    std::remove(path.c_str());
  }
  SUBCASE("export/import preserves cut values") {
    RgiSpec s;
    s.n = 6;
    s.m = 2;
    s.a_lo = -1;
    s.a_hi = 1;
    s.f_lo = -3;
    s.f_hi = 3;
    s.seed = 99;
    BqpPm1Instance q = to_plus_minus_one(gen_rgi(s));
    MaxCutInstance g = to_maxcut(build_q(q, 2.5));
    const std::string path = tmp_path("roundtrip_graph.txt");
    export_maxcut(g, path, true);
    MaxCutInstance h = import_maxcut(path);
    REQUIRE(h.n_vertices == g.n_vertices);
    for_each_pm1(g.n_vertices, [&](const Vector& xbar) {
      CHECK(cut_value(h, xbar) ==
            doctest::Approx(cut_value(g, xbar)).epsilon(1e-9));
    });
    std::remove(path.c_str());
  }
}

TEST_CASE("benchmark harness") {
  const std::string dir = tmp_path("expedis_bench_test");
  std::filesystem::create_directories(dir);
  const std::string suite = dir + "/suite.json";
  {
    std::ofstream out(suite);
    out << R"({"output_dir": ")" << dir << R"(",
      "modes": ["las", "cli", "gw"],
      "instances": [
        {"id": "a", "rgi": {"n": 8, "m": 2, "a_lo": -2, "a_hi": 2,
                            "f_lo": -3, "f_hi": 3, "seed": 5}},
        {"id": "b", "rgi": {"n": 8, "m": 1, "a_lo": -1, "a_hi": 1,
                            "f_lo": -2, "f_hi": 2, "seed": 6}},
        {"id": "c", "rgi": {"n": 9, "m": 2, "a_lo": -2, "a_hi": 2,
                            "f_lo": -3, "f_hi": 3, "seed": 7}}
      ]})";
  }
  BenchOutputs out = bench_run(suite);
  CHECK(out.records.size() == 9);  // 3 instances x 3 modes
  for (const auto& r : out.records) CHECK(!r.failed);

  // sigma of the gap-based modes never exceeds the absolute-value rule
  double las_sigma[3] = {0, 0, 0};
  auto idx = [](const std::string& id) { return id == "a" ? 0 : id == "b" ? 1 : 2; };
  for (const auto& r : out.records)
    if (r.mode == "las") las_sigma[idx(r.id)] = r.sigma;
  for (const auto& r : out.records)
    if (r.mode != "las") CHECK(r.sigma <= las_sigma[idx(r.id)] + 1e-9);

  // determinism: a rerun reproduces the CSV byte-for-byte
  std::ifstream first(dir + "/results.csv");
  std::string csv1((std::istreambuf_iterator<char>(first)),
                   std::istreambuf_iterator<char>());
  bench_run(suite);
  std::ifstream second(dir + "/results.csv");
  std::string csv2((std::istreambuf_iterator<char>(second)),
                   std::istreambuf_iterator<char>());
  CHECK(csv1 == csv2);

  // empty suite produces only headers
  const std::string empty_suite = dir + "/empty.json";
  {
    std::ofstream out2(empty_suite);
    out2 << R"({"output_dir": ")" << dir << R"(", "instances": []})";
  }
  BenchOutputs e = bench_run(empty_suite);
  CHECK(e.records.empty());

  std::filesystem::remove_all(dir);
}
