#include "expedis/instances.hpp"

namespace expedis {

Bqp01Instance gen_rgi(const RgiSpec& spec) {
  if (spec.n < 1 || spec.m < 0) throw ModelError("gen_rgi: bad dimensions");
  if (spec.a_lo > spec.a_hi || spec.f_lo > spec.f_hi)
    throw ModelError("gen_rgi: empty coefficient interval");
  if (spec.family == RgiSpec::Family::One) {
    if (spec.b_v != 0) throw ModelError("gen_rgi: family One requires b_v = 0");
    if (spec.a_lo != -spec.a_hi || spec.f_lo != -spec.f_hi)
      throw ModelError("gen_rgi: family One requires symmetric intervals");
  } else {
    if (spec.a_lo < 0) throw ModelError("gen_rgi: family Two requires A >= 0");
    if (spec.b_v <= 0) throw ModelError("gen_rgi: family Two requires b_v > 0");
  }

  Rng rng(spec.seed);
  Bqp01Instance p;
  p.n = spec.n;
  p.m = spec.m;
  p.c_hat = Vector::Zero(spec.n);
  p.b_hat = Vector::Constant(spec.m, static_cast<double>(spec.b_v));

  // Fixed draw order (A row-major, then F upper triangle) keeps corpora
  // reproducible across platforms.
  p.A_hat = Matrix::Zero(spec.m, spec.n);
  for (int r = 0; r < spec.m; ++r)
    for (int j = 0; j < spec.n; ++j)
      p.A_hat(r, j) = rng.uniform_int(spec.a_lo, spec.a_hi);

  p.F_hat = Matrix::Zero(spec.n, spec.n);
  for (int i = 0; i < spec.n; ++i)
    for (int j = i; j < spec.n; ++j) {
      const double v = rng.uniform_int(spec.f_lo, spec.f_hi);
      p.F_hat(i, j) = v;
      p.F_hat(j, i) = v;
    }
  p.validate_and_repair();
  return p;
}

Bqp01Instance build_k_cluster(const Matrix& adjacency, int k) {
  const int n = static_cast<int>(adjacency.rows());
  if (adjacency.cols() != n) throw ModelError("k-cluster: adjacency not square");
  if (k < 1 || k > n) throw ModelError("k-cluster: k out of range");
  Bqp01Instance p;
  p.n = n;
  p.m = 1;
  p.F_hat = -0.5 * adjacency;
  p.c_hat = Vector::Zero(n);
  p.A_hat = Matrix::Ones(1, n);
  p.b_hat = Vector::Constant(1, static_cast<double>(k));
  p.validate_and_repair();
  return p;
}

Bqp01Instance build_cbqp(const Matrix& Q, const Vector& q, int k) {
  const int n = static_cast<int>(Q.rows());
  if (Q.cols() != n || q.size() != n) throw ModelError("cbqp: dimension mismatch");
  if (k < 1 || k > n) throw ModelError("cbqp: k out of range");
  Bqp01Instance p;
  p.n = n;
  p.m = 1;
  p.F_hat = Q;
  p.c_hat = q;
  p.A_hat = Matrix::Ones(1, n);
  p.b_hat = Vector::Constant(1, static_cast<double>(k));
  p.validate_and_repair();
  return p;
}

Matrix petersen_graph() {
  Matrix a = Matrix::Zero(10, 10);
  auto edge = [&](int i, int j) { a(i, j) = a(j, i) = 1.0; };
  // outer 5-cycle, inner pentagram, spokes
  for (int i = 0; i < 5; ++i) {
    edge(i, (i + 1) % 5);
    edge(5 + i, 5 + (i + 2) % 5);
    edge(i, 5 + i);
  }
  return a;
}

}  // namespace expedis
