#include "expedis/cuts.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>

namespace expedis {

std::vector<CliqueCut> separate_triangle(const Matrix& X, double min_violation,
                                         int max_cuts) {
  const int n = static_cast<int>(X.rows());
  std::vector<CliqueCut> cuts;
  // the four sign patterns (s1,s2,s3) on (X_ij, X_ik, X_jk) with
  // s1*s2*s3 = +1; each corresponds to b'Xb >= 1 for a 3-support b
  static const int pat[4][3] = {
      {1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int l = j + 1; l < n; ++l)
        for (const auto& s : pat) {
          const double lhs =
              s[0] * X(i, j) + s[1] * X(i, l) + s[2] * X(j, l);
          // b'Xb = 3 + 2*lhs with b_i = 1, b_j = s1, b_l = s2; the
          // violation is reported in metric-polytope form (lhs >= -1)
          const double viol = -1.0 - lhs;
          if (viol > min_violation) {
            CliqueCut c;
            c.b = Vector::Zero(n);
            c.b[i] = 1.0;
            c.b[j] = s[0];
            c.b[l] = s[1];
            c.violation = viol;
            cuts.push_back(std::move(c));
          }
        }
  std::sort(cuts.begin(), cuts.end(), [](const auto& a, const auto& b) {
    return a.violation > b.violation;
  });
  if (static_cast<int>(cuts.size()) > max_cuts) cuts.resize(max_cuts);
  return cuts;
}

namespace {

// Best value of b'Xb over the 16 sign patterns of a 5-subset (the first
// sign is fixed to +1 by symmetry). Returns the minimum and fills signs.
double best_five_signs(const Matrix& X, const std::array<int, 5>& idx,
                       std::array<int, 5>& signs) {
  Eigen::Matrix<double, 5, 5> S;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) S(a, b) = X(idx[a], idx[b]);
  double best = std::numeric_limits<double>::infinity();
  for (int mask = 0; mask < 16; ++mask) {
    Eigen::Matrix<double, 5, 1> v;
    v[0] = 1.0;
    for (int a = 1; a < 5; ++a) v[a] = (mask >> (a - 1)) & 1 ? -1.0 : 1.0;
    const double val = v.dot(S * v);
    if (val < best) {
      best = val;
      for (int a = 0; a < 5; ++a) signs[a] = static_cast<int>(v[a]);
    }
  }
  return best;
}

}  // namespace

std::vector<CliqueCut> separate_five_clique(const Matrix& X,
                                            const HeuristicParams& params,
                                            double min_violation,
                                            int max_cuts) {
  const int n = static_cast<int>(X.rows());
  std::vector<CliqueCut> cuts;
  if (n < 5) return cuts;

  Rng rng(params.seed);
  std::set<std::array<int, 5>> seen;  // supports already recorded

  auto record = [&](const std::array<int, 5>& idx, double value) {
    if (1.0 - value <= min_violation) return;
    std::array<int, 5> key = idx;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) return;
    std::array<int, 5> signs;
    best_five_signs(X, idx, signs);
    CliqueCut c;
    c.b = Vector::Zero(n);
    for (int a = 0; a < 5; ++a) c.b[idx[a]] = signs[a];
    c.violation = 1.0 - value;
    cuts.push_back(std::move(c));
  };

  for (int r = 0; r < params.restarts; ++r) {
    // random 5-subset
    std::array<int, 5> idx;
    std::set<int> chosen;
    while (chosen.size() < 5)
      chosen.insert(static_cast<int>(rng.next_below(n)));
    std::copy(chosen.begin(), chosen.end(), idx.begin());

    std::array<int, 5> signs;
    double cur = best_five_signs(X, idx, signs);
    record(idx, cur);

    double temp = params.temp;
    for (int sw = 0; sw < params.swaps; ++sw, temp *= params.cooling) {
      const int pos = static_cast<int>(rng.next_below(5));
      const int cand = static_cast<int>(rng.next_below(n));
      if (std::find(idx.begin(), idx.end(), cand) != idx.end()) continue;
      std::array<int, 5> trial = idx;
      trial[pos] = cand;
      const double val = best_five_signs(X, trial, signs);
      const double delta = val - cur;
      if (delta < 0.0 || rng.uniform01() < std::exp(-delta / temp)) {
        idx = trial;
        cur = val;
        record(idx, cur);
      }
    }
  }

  std::sort(cuts.begin(), cuts.end(), [](const auto& a, const auto& b) {
    return a.violation > b.violation;
  });
  if (static_cast<int>(cuts.size()) > max_cuts) cuts.resize(max_cuts);
  return cuts;
}

SdpSolution cutting_plane_loop(const SdpProblem& p, const CutBudget& budget) {
  SdpProblem work = p;
  std::vector<int> stale;  // rounds the cut's dual has been ~0

  SdpSolution sol = solve(work, budget.sdp_tol);
  if (sol.status != SdpStatus::Solved) return sol;

  for (int round = 0; round < budget.rounds; ++round) {
    auto viol =
        separate_triangle(sol.X, budget.min_violation, budget.per_round);
    if (viol.empty()) {
      HeuristicParams hp = budget.five_clique;
      hp.seed += static_cast<std::uint64_t>(round);
      viol = separate_five_clique(sol.X, hp, budget.min_violation,
                                  budget.per_round);
    }
    if (viol.empty()) break;

    // age out cuts whose multiplier stayed negligible two rounds running
    const int base = static_cast<int>(p.ineq_cuts.size());
    std::vector<LinearTerm> kept(work.ineq_cuts.begin(),
                                 work.ineq_cuts.begin() + base);
    std::vector<int> kept_stale;
    for (int j = base; j < static_cast<int>(work.ineq_cuts.size()); ++j) {
      const int a = j - base;
      const bool inactive = std::abs(sol.cut_duals[j]) < 1e-7;
      const int age = inactive ? stale[a] + 1 : 0;
      if (age < 2) {
        kept.push_back(work.ineq_cuts[j]);
        kept_stale.push_back(age);
      }
    }
    work.ineq_cuts = std::move(kept);
    stale = std::move(kept_stale);

    for (const auto& c : viol) {
      work.ineq_cuts.push_back({c.b, 1.0});
      stale.push_back(0);
    }

    SdpSolution next = solve(work, budget.sdp_tol);
    if (next.status != SdpStatus::Solved) break;  // keep last good solve
    sol = std::move(next);
  }
  return sol;
}

}  // namespace expedis
