#include "matmono/symcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "matmono/errors.hpp"

namespace matmono {

namespace {

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw ShapeError(os.str());
  }
}

void require_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) throw DomainError("matrix entry is not finite", x);
  }
}

// Row-reduced LU with partial pivoting; returns the determinant.
double lu_determinant(GeneralMatrix a) {
  const int n = a.dim();
  double d = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    }
    if (a(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      d = -d;
    }
    d *= a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double l = a(i, k) / a(k, k);
      for (int j = k + 1; j < n; ++j) a(i, j) -= l * a(k, j);
    }
  }
  return d;
}

double one_norm(const GeneralMatrix& a) {
  double best = 0.0;
  for (int j = 0; j < a.dim(); ++j) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------
// GeneralMatrix

GeneralMatrix::GeneralMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n * n), 0.0) {
  if (n < 1) throw ShapeError("matrix dimension must be positive");
}

GeneralMatrix::GeneralMatrix(int n, std::vector<double> row_major) : n_(n), a_(std::move(row_major)) {
  if (n < 1) throw ShapeError("matrix dimension must be positive");
  if (a_.size() != static_cast<std::size_t>(n * n)) throw ShapeError("entry count does not match n*n");
  require_finite(a_);
}

GeneralMatrix GeneralMatrix::identity(int n) {
  GeneralMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

GeneralMatrix GeneralMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(n * n));
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw ShapeError("matrix literal is not square");
    data.insert(data.end(), r.begin(), r.end());
  }
  return GeneralMatrix(n, std::move(data));
}

GeneralMatrix GeneralMatrix::transpose() const {
  GeneralMatrix t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double GeneralMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double x : a_) s += x * x;
  return std::sqrt(s);
}

std::vector<std::vector<double>> GeneralMatrix::rows() const {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    out[static_cast<std::size_t>(i)].assign(a_.begin() + i * n_, a_.begin() + (i + 1) * n_);
  }
  return out;
}

GeneralMatrix& GeneralMatrix::operator+=(const GeneralMatrix& other) {
  require_same_dim(n_, other.n_, "operator+");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += other.a_[k];
  return *this;
}

GeneralMatrix& GeneralMatrix::operator-=(const GeneralMatrix& other) {
  require_same_dim(n_, other.n_, "operator-");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= other.a_[k];
  return *this;
}

GeneralMatrix& GeneralMatrix::operator*=(double s) {
  for (double& x : a_) x *= s;
  return *this;
}

GeneralMatrix operator+(GeneralMatrix a, const GeneralMatrix& b) { return a += b; }
GeneralMatrix operator-(GeneralMatrix a, const GeneralMatrix& b) { return a -= b; }
GeneralMatrix operator*(double s, GeneralMatrix a) { return a *= s; }

GeneralMatrix operator*(const GeneralMatrix& a, const GeneralMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "matrix product");
  const int n = a.dim();
  GeneralMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

std::vector<double> operator*(const GeneralMatrix& a, std::span<const double> x) {
  require_same_dim(a.dim(), static_cast<int>(x.size()), "matrix-vector product");
  std::vector<double> y(x.size(), 0.0);
  for (int i = 0; i < a.dim(); ++i) {
    double s = 0.0;
    for (int j = 0; j < a.dim(); ++j) s += a(i, j) * x[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

// ---------------------------------------------------------------------------
// SymMatrix

SymMatrix::SymMatrix(int n) : m_(n) {
  if (n < 2 || n > kMaxDim) throw ShapeError("SymMatrix dimension must lie in [2, 8]");
}

SymMatrix::SymMatrix(const GeneralMatrix& m) : m_(m) {
  const int n = m.dim();
  if (n < 2 || n > kMaxDim) throw ShapeError("SymMatrix dimension must lie in [2, 8]");
  require_finite(m.data());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (m(i, j) + m(j, i));
      defect_ = std::max(defect_, 0.5 * std::abs(m(i, j) - m(j, i)));
      m_(i, j) = avg;
      m_(j, i) = avg;
    }
}

SymMatrix SymMatrix::identity(int n) { return SymMatrix(GeneralMatrix::identity(n)); }

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  SymMatrix s(static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) s.set(static_cast<int>(i), static_cast<int>(i), d[i]);
  return s;
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  return SymMatrix(GeneralMatrix::from_rows(rows));
}

void SymMatrix::set(int i, int j, double v) {
  if (!std::isfinite(v)) throw DomainError("matrix entry is not finite", v);
  m_(i, j) = v;
  m_(j, i) = v;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
  m_ += other.m_;
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& other) {
  m_ -= other.m_;
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
SymMatrix operator*(double s, SymMatrix a) { return a *= s; }
GeneralMatrix operator*(const SymMatrix& a, const SymMatrix& b) { return a.general() * b.general(); }

// ---------------------------------------------------------------------------
// Scalar invariants and elementary maps

double inner(const GeneralMatrix& a, const GeneralMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "inner");
  const auto x = a.data();
  const auto y = b.data();
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
  return s;
}

double inner(const SymMatrix& a, const SymMatrix& b) { return inner(a.general(), b.general()); }

double trace(const GeneralMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a(i, i);
  return s;
}

double trace(const SymMatrix& a) { return trace(a.general()); }

SymMatrix dev(const SymMatrix& a) {
  const double mean = trace(a) / a.dim();
  SymMatrix d = a;
  for (int i = 0; i < a.dim(); ++i) d.set(i, i, a(i, i) - mean);
  return d;
}

SymMatrix sym(const GeneralMatrix& a) { return SymMatrix(a); }

double det(const GeneralMatrix& a) { return lu_determinant(a); }
double det(const SymMatrix& a) { return lu_determinant(a.general()); }

GeneralMatrix cof(const GeneralMatrix& a) {
  const int n = a.dim();
  GeneralMatrix c(n);
  if (n == 1) {
    c(0, 0) = 1.0;
    return c;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      GeneralMatrix minor(n - 1);
      for (int r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (int s = 0, ms = 0; s < n; ++s) {
          if (s == j) continue;
          minor(mr, ms++) = a(r, s);
        }
        ++mr;
      }
      c(i, j) = ((i + j) % 2 == 0 ? 1.0 : -1.0) * lu_determinant(minor);
    }
  return c;
}

SymMatrix cof(const SymMatrix& a) { return SymMatrix(cof(a.general())); }

GeneralMatrix inverse(const GeneralMatrix& a) {
  const int n = a.dim();
  GeneralMatrix m = a;
  GeneralMatrix inv = GeneralMatrix::identity(n);
  double scale = 0.0;
  for (double x : a.data()) scale = std::max(scale, std::abs(x));
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    if (std::abs(m(piv, k)) <= 1e-14 * scale || scale == 0.0) {
      throw NumericalError("matrix is numerically singular", std::abs(m(piv, k)));
    }
    if (piv != k) {
      for (int j = 0; j < n; ++j) {
        std::swap(m(k, j), m(piv, j));
        std::swap(inv(k, j), inv(piv, j));
      }
    }
    const double p = m(k, k);
    for (int j = 0; j < n; ++j) {
      m(k, j) /= p;
      inv(k, j) /= p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const double l = m(i, k);
      if (l == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        m(i, j) -= l * m(k, j);
        inv(i, j) -= l * inv(k, j);
      }
    }
  }
  return inv;
}

GeneralMatrix expm(const GeneralMatrix& a) {
  const int n = a.dim();
  const double norm = one_norm(a);
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  GeneralMatrix x = std::ldexp(1.0, -squarings) * a;

  GeneralMatrix result = GeneralMatrix::identity(n);
  GeneralMatrix term = GeneralMatrix::identity(n);
  for (int k = 1; k <= 30; ++k) {
    term = (1.0 / k) * (term * x);
    result += term;
    if (one_norm(term) <= 1e-17 * one_norm(result)) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

// ---------------------------------------------------------------------------
// Jacobi eigensolver

namespace {

constexpr int kMaxSweeps = 64;
constexpr double kJacobiTolerance = 1e-14;

SpectralDecomposition jacobi(GeneralMatrix a) {
  const int n = a.dim();
  GeneralMatrix v = GeneralMatrix::identity(n);
  const double norm_a = a.frobenius_norm();

  auto off_norm = [&] {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweeps = 0;
  while (norm_a > 0.0) {
    const double off = off_norm();
    if (off <= kJacobiTolerance * norm_a) break;
    if (sweeps == kMaxSweeps) {
      throw NumericalError("Jacobi eigensolver did not converge", off);
    }
    ++sweeps;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });

  SpectralDecomposition out{GeneralMatrix(n), std::vector<double>(static_cast<std::size_t>(n)), sweeps};
  for (int r = 0; r < n; ++r) {
    const int col = order[static_cast<std::size_t>(r)];
    out.lambda[static_cast<std::size_t>(r)] = a(col, col);
    for (int k = 0; k < n; ++k) out.q(r, k) = v(k, col);
  }
  return out;
}

}  // namespace

SymMatrix SpectralDecomposition::compose(std::span<const double> values) const {
  const int n = q.dim();
  require_same_dim(n, static_cast<int>(values.size()), "spectral compose");
  GeneralMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += q(k, i) * values[static_cast<std::size_t>(k)] * q(k, j);
      m(i, j) = s;
      m(j, i) = s;
    }
  return SymMatrix(m);
}

SpectralDecomposition eig(const SymMatrix& a) { return jacobi(a.general()); }

SpectralDecomposition eig_symmetric(const GeneralMatrix& a) {
  GeneralMatrix s = a;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i + 1; j < a.dim(); ++j) s(j, i) = s(i, j);
  return jacobi(std::move(s));
}

// ---------------------------------------------------------------------------
// Definiteness

const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::PositiveDefinite: return "PositiveDefinite";
    case Definiteness::PositiveSemiDefinite: return "PositiveSemiDefinite";
    case Definiteness::Indefinite: return "Indefinite";
    case Definiteness::NegativeSemiDefinite: return "NegativeSemiDefinite";
    case Definiteness::NegativeDefinite: return "NegativeDefinite";
  }
  return "?";
}

DefinitenessResult classify_spectrum(std::span<const double> ascending, double tol) {
  if (tol < 0.0) throw PreconditionError("definiteness tolerance must be non-negative");
  if (ascending.empty()) throw ShapeError("empty spectrum");
  const double lo = ascending.front();
  const double hi = ascending.back();
  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  const double band = tol * scale;
  Definiteness kind;
  if (lo > band) {
    kind = Definiteness::PositiveDefinite;
  } else if (lo >= -band) {
    kind = Definiteness::PositiveSemiDefinite;
  } else if (hi < -band) {
    kind = Definiteness::NegativeDefinite;
  } else if (hi <= band) {
    kind = Definiteness::NegativeSemiDefinite;
  } else {
    kind = Definiteness::Indefinite;
  }
  return {kind, lo, hi};
}

DefinitenessResult classify(const SymMatrix& a, double tol) {
  return classify_spectrum(eig(a).lambda, tol);
}

// ---------------------------------------------------------------------------
// SymBasis

SymBasis::SymBasis(int n) : n_(n) {
  if (n < 2 || n > kMaxDim) throw ShapeError("SymBasis dimension must lie in [2, 8]");
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    SymMatrix e(n);
    e.set(i, i, 1.0);
    elements_.push_back(e);
    index_.emplace_back(i, i);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      SymMatrix e(n);
      e.set(i, j, r);
      elements_.push_back(e);
      index_.emplace_back(i, j);
    }
}

std::vector<double> SymBasis::coordinates(const SymMatrix& h) const {
  require_same_dim(n_, h.dim(), "SymBasis::coordinates");
  const double s2 = std::sqrt(2.0);
  std::vector<double> c(index_.size());
  for (std::size_t k = 0; k < index_.size(); ++k) {
    const auto [i, j] = index_[k];
    c[k] = i == j ? h(i, i) : s2 * h(i, j);
  }
  return c;
}

SymMatrix SymBasis::compose(std::span<const double> coords) const {
  require_same_dim(size(), static_cast<int>(coords.size()), "SymBasis::compose");
  const double r = 1.0 / std::sqrt(2.0);
  SymMatrix h(n_);
  for (std::size_t k = 0; k < index_.size(); ++k) {
    const auto [i, j] = index_[k];
    h.set(i, j, i == j ? coords[k] : r * coords[k]);
  }
  return h;
}

GeneralMatrix SymBasis::gram() const {
  GeneralMatrix g(size());
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < size(); ++b) g(a, b) = inner((*this)[a], (*this)[b]);
  return g;
}

}  // namespace matmono
