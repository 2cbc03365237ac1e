#include "matmono/rng.hpp"

#include <cmath>
#include <numbers>

namespace matmono {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x5851F42D4C957F2Dull)));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

SymMatrix random_symmetric(Rng& rng, int n, double scale) {
  GeneralMatrix g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = scale * rng.normal();
  return SymMatrix(g);
}

SymMatrix random_pd(Rng& rng, int n, double scale) {
  GeneralMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = scale * rng.normal();
  SymMatrix p(m * m.transpose());
  const double delta = 1e-6 * p.frobenius_norm();
  for (int i = 0; i < n; ++i) p.set(i, i, p(i, i) + delta);
  return p;
}

SymMatrix random_psym(Rng& rng, int n, double scale) {
  const SymMatrix s = random_symmetric(rng, n, scale);
  const SpectralDecomposition d = eig(s);
  std::vector<double> e(d.lambda.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::exp(d.lambda[i]);
  return d.compose(e);
}

GeneralMatrix random_orthogonal(Rng& rng, int n) {
  GeneralMatrix q(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q(i, j) = rng.normal();
  // orthonormalize rows
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < i; ++k) {
      double d = 0.0;
      for (int j = 0; j < n; ++j) d += q(i, j) * q(k, j);
      for (int j = 0; j < n; ++j) q(i, j) -= d * q(k, j);
    }
    double norm = 0.0;
    for (int j = 0; j < n; ++j) norm += q(i, j) * q(i, j);
    norm = std::sqrt(norm);
    for (int j = 0; j < n; ++j) q(i, j) /= norm;
  }
  return q;
}

}  // namespace matmono
