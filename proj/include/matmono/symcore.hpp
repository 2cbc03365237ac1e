#pragma once

// Dense kernels for small real square matrices: a general matrix type, a
// symmetric matrix type, the Frobenius inner product, a cyclic Jacobi
// eigensolver, definiteness classification and the orthonormal basis of
// Sym(n) used to write linear operators on Sym(n) as plain matrices.

#include <span>
#include <vector>

namespace matmono {

/// Largest dimension accepted for SymMatrix.
inline constexpr int kMaxDim = 8;

/// Default relative tolerance of `classify`.
inline constexpr double kDefaultPdTolerance = 1e-9;

/// Dense real square matrix, row-major. Entries are always finite.
///
/// No dimension cap: this type also carries the m x m matrices of
/// operators on Sym(n).
class GeneralMatrix {
 public:
  GeneralMatrix() = default;
  explicit GeneralMatrix(int n);
  GeneralMatrix(int n, std::vector<double> row_major);

  static GeneralMatrix identity(int n);
  static GeneralMatrix from_rows(const std::vector<std::vector<double>>& rows);

  int dim() const { return n_; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  std::span<const double> data() const { return a_; }

  GeneralMatrix transpose() const;
  double frobenius_norm() const;
  std::vector<std::vector<double>> rows() const;

  GeneralMatrix& operator+=(const GeneralMatrix& other);
  GeneralMatrix& operator-=(const GeneralMatrix& other);
  GeneralMatrix& operator*=(double s);

 private:
  int n_ = 0;
  std::vector<double> a_;
};

GeneralMatrix operator+(GeneralMatrix a, const GeneralMatrix& b);
GeneralMatrix operator-(GeneralMatrix a, const GeneralMatrix& b);
GeneralMatrix operator*(const GeneralMatrix& a, const GeneralMatrix& b);
GeneralMatrix operator*(double s, GeneralMatrix a);
std::vector<double> operator*(const GeneralMatrix& a, std::span<const double> x);

/// Real symmetric n x n matrix, 2 <= n <= kMaxDim.
///
/// Both triangles are stored and kept bitwise equal. Building from a general
/// square matrix symmetrizes through (M + M^T)/2; `symmetrization_defect`
/// records max |m_ij - m_ji| / 2 of the input.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n);
  explicit SymMatrix(const GeneralMatrix& m);

  static SymMatrix identity(int n);
  static SymMatrix diagonal(std::span<const double> d);
  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);

  int dim() const { return m_.dim(); }
  double operator()(int i, int j) const { return m_(i, j); }
  void set(int i, int j, double v);

  const GeneralMatrix& general() const { return m_; }
  double frobenius_norm() const { return m_.frobenius_norm(); }
  std::vector<std::vector<double>> rows() const { return m_.rows(); }

  double symmetrization_defect() const { return defect_; }
  /// True when construction changed the input by more than 1e-12.
  bool was_symmetrized() const { return defect_ > 1e-12; }

  SymMatrix& operator+=(const SymMatrix& other);
  SymMatrix& operator-=(const SymMatrix& other);
  SymMatrix& operator*=(double s);

 private:
  GeneralMatrix m_;
  double defect_ = 0.0;
};

SymMatrix operator+(SymMatrix a, const SymMatrix& b);
SymMatrix operator-(SymMatrix a, const SymMatrix& b);
SymMatrix operator*(double s, SymMatrix a);
GeneralMatrix operator*(const SymMatrix& a, const SymMatrix& b);

/// <M, N> = tr(M^T N).
double inner(const GeneralMatrix& a, const GeneralMatrix& b);
double inner(const SymMatrix& a, const SymMatrix& b);

double trace(const GeneralMatrix& a);
double trace(const SymMatrix& a);
/// dev_n X = X - (tr X / n) 1.
SymMatrix dev(const SymMatrix& a);
/// Symmetric part (A + A^T)/2.
SymMatrix sym(const GeneralMatrix& a);

double det(const GeneralMatrix& a);
double det(const SymMatrix& a);
/// Cofactor matrix, a * cof(a)^T = det(a) * 1.
GeneralMatrix cof(const GeneralMatrix& a);
SymMatrix cof(const SymMatrix& a);
/// Throws NumericalError for (numerically) singular input.
GeneralMatrix inverse(const GeneralMatrix& a);

/// Matrix exponential of an arbitrary square matrix (scaling and squaring
/// with a truncated Taylor series). Independent of the eigensolver.
GeneralMatrix expm(const GeneralMatrix& a);

/// A = Q^T diag(lambda) Q, rows of Q are eigenvectors, lambda ascending.
struct SpectralDecomposition {
  GeneralMatrix q;
  std::vector<double> lambda;
  int sweeps = 0;

  /// Q^T diag(values) Q, symmetrized.
  SymMatrix compose(std::span<const double> values) const;
};

/// Cyclic Jacobi (row-major sweep order, at most 64 sweeps, stop when the
/// off-diagonal Frobenius norm is <= 1e-14 * ||A||_F). Deterministic.
SpectralDecomposition eig(const SymMatrix& a);

/// Same solver for a symmetric matrix of any size (used on operator
/// matrices, m up to 36). Only the upper triangle is read.
SpectralDecomposition eig_symmetric(const GeneralMatrix& a);

enum class Definiteness {
  PositiveDefinite,
  PositiveSemiDefinite,
  Indefinite,
  NegativeSemiDefinite,
  NegativeDefinite,
};

const char* to_string(Definiteness d);

struct DefinitenessResult {
  Definiteness kind;
  double lambda_min;
  double lambda_max;
};

/// Classifies from eigenvalues with scale = max(1, max |lambda|):
/// PD if lambda_min > tol*scale, PSD if lambda_min >= -tol*scale,
/// ND if lambda_max < -tol*scale, NSD if lambda_max <= tol*scale.
DefinitenessResult classify(const SymMatrix& a, double tol = kDefaultPdTolerance);
DefinitenessResult classify_spectrum(std::span<const double> ascending,
                                     double tol = kDefaultPdTolerance);

/// Orthonormal basis of Sym(n): E_ii = e_i e_i^T first, then
/// E_ij = (e_i e_j^T + e_j e_i^T)/sqrt(2) for i < j in lexicographic order.
class SymBasis {
 public:
  explicit SymBasis(int n);

  int dim() const { return n_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const SymMatrix& operator[](int k) const { return elements_[static_cast<std::size_t>(k)]; }

  std::vector<double> coordinates(const SymMatrix& h) const;
  SymMatrix compose(std::span<const double> coords) const;
  GeneralMatrix gram() const;

 private:
  int n_;
  std::vector<SymMatrix> elements_;
  std::vector<std::pair<int, int>> index_;
};

/// n(n+1)/2.
constexpr int sym_dim(int n) { return n * (n + 1) / 2; }

}  // namespace matmono
