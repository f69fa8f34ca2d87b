#pragma once

#include "expedis/model.hpp"

namespace expedis {

/// Random instance recipe. Family One draws both signs symmetrically and
/// fixes b_v = 0 (so y = 0 is always feasible); family Two uses
/// nonnegative constraint coefficients and a positive right-hand side.
struct RgiSpec {
  enum class Family { One, Two };
  Family family = Family::One;
  int n = 10;
  int m = 2;
  int a_lo = -1, a_hi = 1;  // constraint coefficient interval
  int f_lo = -1, f_hi = 1;  // objective coefficient interval
  int b_v = 0;              // right-hand side, replicated over rows
  std::uint64_t seed = 1;
};

/// Uniform-integer random instance: c_hat = 0, b_hat = b_v * e, A_hat
/// i.i.d. in [a_lo, a_hi], F_hat symmetric with the upper triangle drawn
/// i.i.d. in [f_lo, f_hi]. Deterministic under the seed.
Bqp01Instance gen_rgi(const RgiSpec& spec);

/// Densest-k-subgraph: max (1/2) y'Ay over |y| = k, encoded as the
/// minimization F_hat = -A/2, c_hat = 0, e'y = k. The caller re-negates
/// the reported objective for display.
Bqp01Instance build_k_cluster(const Matrix& adjacency, int k);

/// Cardinality-constrained BQP: min y'Qy + q'y over |y| = k.
Bqp01Instance build_cbqp(const Matrix& Q, const Vector& q, int k);

/// The Petersen graph (10 vertices, 15 edges), for test corpora.
Matrix petersen_graph();

}  // namespace expedis
