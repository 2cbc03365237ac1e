#pragma once

// Primary matrix functions on symmetric matrices and their Frechet
// derivatives, written as operators on Sym(n) in the SymBasis.

#include <algorithm>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "matmono/symcore.hpp"

namespace matmono {

/// Open interval (lo, hi); either end may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double t) const { return t > lo && t < hi; }
  static Interval real_line() { return {}; }
  static Interval positive() { return {0.0, std::numeric_limits<double>::infinity()}; }
};

/// Scalar map with its derivative and (optionally) an antiderivative.
/// Induces the primary matrix function on S_I, I = domain.
struct ScalarFunction {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> antiderivative;  // empty when not registered
  Interval domain;

  bool has_antiderivative() const { return static_cast<bool>(antiderivative); }
};

/// Built-ins: "exp", "log", "square", "cube", "id", "cubic-mono" (t + t^3/3),
/// "softplus" (log(1 + e^t), no antiderivative). Throws ConfigError for
/// unknown names.
const ScalarFunction& builtin_function(std::string_view name);
std::vector<std::string> builtin_function_names();

/// Knobs for derivative construction.
struct DifferencingSpec {
  /// Relative eigenvalue gap below which the divided difference is replaced
  /// by f' at the midpoint.
  double eig_threshold = 1e-8;
  /// Gauss-Legendre order for the integral representations.
  int quadrature_order = 32;

  void validate() const;
};

/// Linear operator on Sym(n), stored as its m x m matrix in the SymBasis
/// (m = n(n+1)/2). The matrix need not be symmetric.
class SymOperator {
 public:
  SymOperator(std::shared_ptr<const SymBasis> basis, GeneralMatrix mat);

  static SymOperator identity(int n);
  /// Column b is coords(map(E_b)).
  static SymOperator from_map(int n, const std::function<SymMatrix(const SymMatrix&)>& map);

  int dim() const { return basis_->dim(); }
  int size() const { return mat_.dim(); }
  const GeneralMatrix& matrix() const { return mat_; }
  const SymBasis& basis() const { return *basis_; }
  std::shared_ptr<const SymBasis> basis_ptr() const { return basis_; }

  SymMatrix apply(const SymMatrix& h) const;

  /// ||M - M^T||_F / ||M||_F of the stored matrix (0 for the zero operator).
  double asymmetry() const;
  /// Asymmetry measured before a builder symmetrized the matrix.
  double presymmetrization_asymmetry() const { return presym_asymmetry_; }
  void set_presymmetrization_asymmetry(double a) { presym_asymmetry_ = a; }

  /// (M + M^T)/2, carrying over the asymmetry of this operator as record.
  SymOperator symmetrized() const;
  /// Ascending eigenvalues of the symmetric part.
  std::vector<double> sym_eigenvalues() const;
  double lambda_min() const;

  /// this o other.
  SymOperator compose(const SymOperator& other) const;
  SymOperator inverse() const;

 private:
  std::shared_ptr<const SymBasis> basis_;
  GeneralMatrix mat_;
  double presym_asymmetry_ = 0.0;
};

SymOperator operator-(const SymOperator& a, const SymOperator& b);
SymOperator operator*(double s, const SymOperator& a);

/// Throws DomainError naming the first eigenvalue outside fn.domain.
void require_spectrum_in_domain(const ScalarFunction& fn, std::span<const double> lambda);

/// f(A) = Q^T diag(f(lambda)) Q.
SymMatrix apply_primary(const ScalarFunction& fn, const SymMatrix& a);

/// Df[A] by first divided differences in the eigenbasis.
///
/// Df[A].H = Q^T (Phi o (Q H Q^T)) Q with Phi_ij the divided difference of
/// f at (lambda_i, lambda_j), or f'((lambda_i + lambda_j)/2) when
/// |lambda_i - lambda_j| <= eig_threshold * max(1, max|lambda|). The
/// returned matrix is symmetrized; its prior asymmetry is recorded and must
/// not exceed 1e-9 (NumericalError otherwise).
SymOperator frechet(const ScalarFunction& fn, const SymMatrix& a, const DifferencingSpec& spec = {});

/// Dexp[A] from the quadrature of int_0^1 exp(sA) H exp((1-s)A) ds; the
/// exponentials use `expm`, not the eigensolver.
SymOperator frechet_exp_integral(const SymMatrix& a, const DifferencingSpec& spec = {});

/// Dlog[A] from the quadrature of int_0^1 R(t) H R(t) dt,
/// R(t) = (t(A - 1) + 1)^{-1}. A must be positive definite. Composite rule
/// with panels graded toward an end near a pole of R (spread spectra).
SymOperator frechet_log_integral(const SymMatrix& a, const DifferencingSpec& spec = {});

/// W(A) = sum_i F(lambda_i). ConfigError when fn has no antiderivative.
double potential_value(const ScalarFunction& fn, const SymMatrix& a);

/// int_0^1 <f(tA), A> dt by Gauss-Legendre. Requires 0 inside fn.domain
/// (the segment from 0 to A must lie in S_I).
double pseudo_potential(const ScalarFunction& fn, const SymMatrix& a, int order = 32);

struct GradientCheckReport {
  double h = 0.0;
  /// max over basis directions of |central difference of W - <f(A), E>| at h.
  double max_deviation = 0.0;
  /// Same at h/2.
  double max_deviation_half = 0.0;
  /// max_deviation / max_deviation_half (4 for second-order convergence).
  double ratio = 0.0;
  /// Both deviations sit at round-off level (W is locally quadratic), so the
  /// ratio carries no information and the check passes trivially.
  bool exact = false;
};

GradientCheckReport potential_gradient_check(const ScalarFunction& fn, const SymMatrix& a, double h);

/// D det[diag(a)].1 = sum_i prod_{j != i} a_j.
double det_derivative_identity_direction(std::span<const double> a_diag);

/// (det(A + hH) - det(A - hH)) / (2h).
double det_directional_difference(const GeneralMatrix& a, const GeneralMatrix& h, double step);

/// Central-difference estimate of D det[diag(a)].H for a zero-diagonal H.
double det_derivative_offdiag_vanishes(std::span<const double> a_diag, const SymMatrix& h_off,
                                       double step);

/// lambda(diag(a) + tH) - lambda(diag(a)), both spectra ascending.
std::vector<double> eigenvalue_shift(std::span<const double> a_diag, const SymMatrix& h, double t);

/// eigenvalue_shift restricted to zero-diagonal H and simple spectra (min
/// gap of a_diag above 10 * eig_threshold * scale); PreconditionError
/// otherwise. The result is O(t^2).
std::vector<double> eigenvalue_offdiag_insensitivity(std::span<const double> a_diag, const SymMatrix& h_off,
                                                     double t, const DifferencingSpec& spec = {});

struct IsotropyReport {
  /// ||f(Q^T A Q) - Q^T f(A) Q||_F
  double primary_deviation = 0.0;
  /// |W(Q^T A Q) - W(A)|, 0 when fn has no antiderivative.
  double potential_deviation = 0.0;
  double scale = 1.0;
  double max_deviation() const { return std::max(primary_deviation, potential_deviation); }
};

/// q must be orthogonal within 1e-10 (PreconditionError otherwise).
IsotropyReport isotropy_conjugation_check(const ScalarFunction& fn, const SymMatrix& a, const GeneralMatrix& q);

/// Q^T A Q.
SymMatrix conjugate(const GeneralMatrix& q, const SymMatrix& a);

}  // namespace matmono
