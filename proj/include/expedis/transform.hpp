#pragma once

#include <optional>

#include "expedis/model.hpp"

namespace expedis {

/// Matrix Q of the penalized quadratic form h(x) = [1;x]' Q [1;x].
struct QMatrix {
  Matrix Q;               // symmetric (n+1) x (n+1), rows indexed 0..n
  double const_eQe = 0.0; // e'Qe
};

/// Weighted graph on vertices {0,..,n} whose maximum cut solves the
/// penalized problem: h* = e'Qe - z_maxcut.
struct MaxCutInstance {
  int n_vertices = 0;
  Matrix weights;     // adjacency, symmetric, zero diagonal
  Matrix C;           // Laplacian / 4
  double constant = 0.0;              // e'Qe
  std::optional<double> rho_cutoff;   // e'Qe - rho, when rho is known
};

struct Cut {
  Vector xbar;   // in {-1,1}^(n+1)
  double value = 0.0;  // xbar' C xbar
};

QMatrix build_q(const BqpPm1Instance& p, double sigma);

MaxCutInstance to_maxcut(const QMatrix& q,
                         std::optional<double> rho = std::nullopt);

double cut_value(const MaxCutInstance& g, const Vector& xbar);

/// Fixes xbar[0] = +1 by global sign flip and returns components 1..n.
AssignmentPm1 cut_to_assignment(const Cut& cut);

}  // namespace expedis
