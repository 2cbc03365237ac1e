#pragma once

#include <cstdint>
#include <random>

#include "matmono/symcore.hpp"

namespace matmono {

/// Seed used when none is given.
inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/// Deterministic stream of doubles.
///
/// Built on std::mt19937_64, whose output sequence is fixed by the
/// standard; uniform and normal variates are derived here (not through the
/// implementation-defined std distributions) so that samples are identical
/// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for sample `index` of a run with `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Box-Muller).
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Symmetric part of a matrix with i.i.d. N(0, scale^2) entries.
SymMatrix random_symmetric(Rng& rng, int n, double scale);
/// M M^T + delta 1 with M Gaussian (entry scale `scale`), delta = 1e-6 ||M M^T||_F.
SymMatrix random_pd(Rng& rng, int n, double scale);
/// exp(S), S = random_symmetric(rng, n, scale).
SymMatrix random_psym(Rng& rng, int n, double scale);
/// Orthogonal matrix from modified Gram-Schmidt on a Gaussian matrix.
GeneralMatrix random_orthogonal(Rng& rng, int n);

}  // namespace matmono
