#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "expedis/bounds.hpp"
#include "expedis/cuts.hpp"
#include "expedis/sdp.hpp"

using namespace expedis;

TEST_CASE("one-dimensional diagonal-pinned SDP") {
  SdpProblem p = SdpProblem::diag_e(1, Matrix::Ones(1, 1), SdpSense::Max);
  SdpSolution s = solve(p, 1e-8);
  REQUIRE(s.status == SdpStatus::Solved);
  CHECK(s.value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("basic relaxation of the 1-D reference instance") {
  // lifted objective [[1, 0.5], [0.5, 0]]; on the unit-diagonal slice the
  // value is 1 + x with x in [-1, 1], so min 0 and max 2
  BqpPm1Instance q;
  q.n = 1;
  q.m = 1;
  q.F = Matrix::Zero(1, 1);
  q.c = Vector::Constant(1, 1.0);
  q.A = Matrix::Constant(1, 1, 0.5);
  q.b = Vector::Constant(1, 0.5);
  q.alpha = 1.0;

  SdpSolution lo = solve(shor_problem(q, SdpSense::Min), 1e-8);
  REQUIRE(lo.status == SdpStatus::Solved);
  CHECK(lo.value == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(safe_bound(lo, BoundDirection::Lower) <= 0.0);
  CHECK(safe_bound(lo, BoundDirection::Lower) >= -1e-5);

  SdpSolution hi = solve(shor_problem(q, SdpSense::Max), 1e-8);
  REQUIRE(hi.status == SdpStatus::Solved);
  CHECK(hi.value == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(safe_bound(hi, BoundDirection::Upper) >= 2.0);
}

TEST_CASE("safe bound shifts to the requested side") {
  SdpSolution s;
  s.status = SdpStatus::Solved;
  s.dual_value = 0.0;
  s.tol = 1e-6;
  CHECK(safe_bound(s, BoundDirection::Lower) <= -1e-6);
  s.dual_value = 2.0;
  CHECK(safe_bound(s, BoundDirection::Upper) >= 2.0);
}

TEST_CASE("triangle separation") {
  SUBCASE("all-ones matrix satisfies every triangle inequality") {
    CHECK(separate_triangle(Matrix::Ones(4, 4)).empty());
  }
  SUBCASE("sign-inconsistent correlations are caught") {
    Matrix X = Matrix::Identity(3, 3);
    X(0, 1) = X(1, 0) = 1.0;
    X(0, 2) = X(2, 0) = 1.0;
    X(1, 2) = X(2, 1) = -1.0;
    auto cuts = separate_triangle(X);
    REQUIRE(!cuts.empty());
    CHECK(cuts.front().violation == doctest::Approx(2.0).epsilon(1e-12));
    // the returned functional must actually be violated: b'Xb < 1
    const Vector& b = cuts.front().b;
    CHECK(b.dot(X * b) < 1.0);
  }
  SUBCASE("identity matrix violates nothing") {
    CHECK(separate_triangle(Matrix::Identity(3, 3)).empty());
  }
}

TEST_CASE("five-clique separation") {
  SUBCASE("rank-one cut matrices satisfy all clique inequalities") {
    Vector x(6);
    x << 1, -1, 1, 1, -1, -1;
    Matrix X = x * x.transpose();
    HeuristicParams hp;
    CHECK(separate_five_clique(X, hp).empty());
  }
  SUBCASE("identity at n=5 is feasible for the clique cut") {
    // b'Ib = 5 >= 1 for every sign pattern
    HeuristicParams hp;
    CHECK(separate_five_clique(Matrix::Identity(5, 5), hp).empty());
  }
  SUBCASE("heuristic agrees with the exhaustive separation oracle") {
    // several dense psd matrices with unit diagonal
    for (std::uint64_t seed : {3u, 5u, 9u}) {
      Rng rng(seed);
      const int n = 7;
      Matrix G(n, 2);
      for (int i = 0; i < n; ++i) {
        G(i, 0) = rng.normal();
        G(i, 1) = rng.normal();
        G.row(i).normalize();
      }
      Matrix X = G * G.transpose();

      // exhaustive oracle: min b'Xb over all 5-subsets and sign patterns
      double best = 1e100;
      std::vector<int> idx(5);
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          for (int c = b + 1; c < n; ++c)
            for (int d = c + 1; d < n; ++d)
              for (int e = d + 1; e < n; ++e)
                for (int pat = 0; pat < 16; ++pat) {
                  Vector v = Vector::Zero(n);
                  int ids[5] = {a, b, c, d, e};
                  v(ids[0]) = 1.0;
                  for (int t = 0; t < 4; ++t)
                    v(ids[t + 1]) = (pat >> t) & 1 ? 1.0 : -1.0;
                  best = std::min(best, v.dot(X * v));
                }

      HeuristicParams hp;
      hp.restarts = 200;
      auto cuts = separate_five_clique(X, hp, 1e-3);
      if (best < 1.0 - 1e-3) {
        REQUIRE(!cuts.empty());
        // heuristic need not find the global best, but must find a cut
        CHECK(cuts.front().violation > 1e-3);
        CHECK(cuts.front().b.dot(X * cuts.front().b) < 1.0);
      } else {
        CHECK(cuts.empty());
      }
    }
  }
}

TEST_CASE("cutting-plane loop") {
  SUBCASE("zero objective stays at zero") {
    SdpProblem p = SdpProblem::diag_e(4, Matrix::Zero(4, 4), SdpSense::Max);
    SdpSolution s = cutting_plane_loop(p, CutBudget{});
    REQUIRE(s.status == SdpStatus::Solved);
    CHECK(std::abs(s.value) < 1e-6);
  }
  SUBCASE("triangle cuts close the gap on the unit triangle graph") {
    // quarter-Laplacian of K3: basic bound 2.25, exact max-cut 2
    Matrix C = 0.25 * (3.0 * Matrix::Identity(3, 3) - Matrix::Ones(3, 3));
    SdpProblem p = SdpProblem::diag_e(3, C, SdpSense::Max);
    SdpSolution root = solve(p, 1e-8);
    REQUIRE(root.status == SdpStatus::Solved);
    CHECK(root.value == doctest::Approx(2.25).epsilon(1e-5));
    SdpSolution cut = cutting_plane_loop(p, CutBudget{});
    REQUIRE(cut.status == SdpStatus::Solved);
    CHECK(cut.value == doctest::Approx(2.0).epsilon(1e-5));
  }
  SUBCASE("cut rounds never loosen the bound") {
    for (std::uint64_t seed : {21u, 22u, 23u}) {
      Rng rng(seed);
      const int n = 6;
      Matrix W = Matrix::Zero(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          W(i, j) = W(j, i) = rng.uniform_int(-3, 3);
      Matrix C =
          0.25 * (Matrix(W.rowwise().sum().asDiagonal()) - W);
      SdpProblem p = SdpProblem::diag_e(n, C, SdpSense::Max);
      SdpSolution root = solve(p, 1e-8);
      SdpSolution cut = cutting_plane_loop(p, CutBudget{});
      REQUIRE(root.status == SdpStatus::Solved);
      REQUIRE(cut.status == SdpStatus::Solved);
      CHECK(cut.value <= root.value + 1e-6);
    }
  }
}
