#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Dense>

namespace expedis {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Seedable xoshiro256** generator with splitmix64 seeding.
///
/// All randomized components (instance generators, GW rounding, the
/// 5-clique heuristic) draw from this generator so that corpora and
/// runs are reproducible from a single 64-bit seed, independent of the
/// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    // splitmix64 expansion of the seed into the four state words
    std::uint64_t z = seed;
    for (auto& w : s_) {
      z += 0x9e3779b97f4a7c15ULL;
      std::uint64_t t = z;
      t = (t ^ (t >> 30)) * 0xbf58476d1ce4e5b9ULL;
      t = (t ^ (t >> 27)) * 0x94d049bb133111ebULL;
      w = t ^ (t >> 31);
    }
  }

  std::uint64_t next_u64() {
    auto rotl = [](std::uint64_t x, int k) {
      return (x << k) | (x >> (64 - k));
    };
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform integer in [0, bound) by bitmask rejection sampling.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t mask = ~std::uint64_t{0} >> __builtin_clzll(bound - 1 | 1);
    std::uint64_t v;
    do {
      v = next_u64() & mask;
    } while (v >= bound);
    return v;
  }

  /// Uniform integer in the closed interval [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    next_below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double uniform01() { return (next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller.
  double normal() {
    double u1 = 0.0;
    while (u1 == 0.0) u1 = uniform01();
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  std::uint64_t s_[4];
};

/// Calls fn(x) for every x in {-1,1}^n in lexicographic order
/// (entry i toggles fastest for i = n-1; -1 sorts before +1).
inline void for_each_pm1(int n, const std::function<void(const Vector&)>& fn) {
  Vector x = Vector::Constant(n, -1.0);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 0; k < total; ++k) {
    for (int i = 0; i < n; ++i)
      x[i] = (k >> (n - 1 - i)) & 1 ? 1.0 : -1.0;
    fn(x);
  }
}

}  // namespace expedis
