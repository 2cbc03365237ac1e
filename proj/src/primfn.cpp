#include "matmono/primfn.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "matmono/errors.hpp"
#include "matmono/quadrature.hpp"

namespace matmono {

namespace {

std::vector<ScalarFunction> make_builtins() {
  const Interval r = Interval::real_line();
  std::vector<ScalarFunction> fns;
  fns.push_back({"exp", [](double t) { return std::exp(t); }, [](double t) { return std::exp(t); },
                 [](double t) { return std::exp(t); }, r});
  fns.push_back({"log", [](double t) { return std::log(t); }, [](double t) { return 1.0 / t; },
                 [](double t) { return t * std::log(t) - t; }, Interval::positive()});
  fns.push_back({"square", [](double t) { return t * t; }, [](double t) { return 2.0 * t; },
                 [](double t) { return t * t * t / 3.0; }, r});
  fns.push_back({"cube", [](double t) { return t * t * t; }, [](double t) { return 3.0 * t * t; },
                 [](double t) { return t * t * t * t / 4.0; }, r});
  fns.push_back({"id", [](double t) { return t; }, [](double) { return 1.0; },
                 [](double t) { return 0.5 * t * t; }, r});
  fns.push_back({"cubic-mono", [](double t) { return t + t * t * t / 3.0; },
                 [](double t) { return 1.0 + t * t; },
                 [](double t) { return 0.5 * t * t + t * t * t * t / 12.0; }, r});
  // antiderivative is -Li2(-e^t); left unregistered
  fns.push_back({"softplus", [](double t) { return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t))); },
                 [](double t) { return 1.0 / (1.0 + std::exp(-t)); }, {}, r});
  return fns;
}

const std::vector<ScalarFunction>& builtins() {
  static const std::vector<ScalarFunction> fns = make_builtins();
  return fns;
}

std::string format_interval(const Interval& i) {
  std::ostringstream os;
  os << "(" << i.lo << ", " << i.hi << ")";
  return os.str();
}

double spectral_scale(std::span<const double> lambda) {
  double s = 1.0;
  for (double l : lambda) s = std::max(s, std::abs(l));
  return s;
}

// Phi_ij: divided difference, or f' at the midpoint for (near) coincident eigenvalues.
GeneralMatrix divided_differences(const ScalarFunction& fn, std::span<const double> lambda, double threshold) {
  const int n = static_cast<int>(lambda.size());
  const double band = threshold * spectral_scale(lambda);
  std::vector<double> fl(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) fl[i] = fn.f(lambda[i]);
  GeneralMatrix phi(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double li = lambda[static_cast<std::size_t>(i)];
      const double lj = lambda[static_cast<std::size_t>(j)];
      if (std::abs(li - lj) > band) {
        phi(i, j) = (fl[static_cast<std::size_t>(i)] - fl[static_cast<std::size_t>(j)]) / (li - lj);
      } else {
        phi(i, j) = fn.df(0.5 * (li + lj));
      }
    }
  return phi;
}

}  // namespace

const ScalarFunction& builtin_function(std::string_view name) {
  for (const auto& fn : builtins())
    if (fn.name == name) return fn;
  throw ConfigError("unknown scalar function '" + std::string(name) + "'");
}

std::vector<std::string> builtin_function_names() {
  std::vector<std::string> names;
  for (const auto& fn : builtins()) names.push_back(fn.name);
  return names;
}

void DifferencingSpec::validate() const {
  if (!(eig_threshold > 0.0)) throw ConfigError("eigenvalue threshold must be positive");
  if (quadrature_order < 2) throw ConfigError("quadrature order must be at least 2");
}

// ---------------------------------------------------------------------------
// SymOperator

SymOperator::SymOperator(std::shared_ptr<const SymBasis> basis, GeneralMatrix mat)
    : basis_(std::move(basis)), mat_(std::move(mat)) {
  if (!basis_) throw ShapeError("operator needs a basis");
  if (mat_.dim() != basis_->size()) throw ShapeError("operator matrix size does not match basis");
}

SymOperator SymOperator::identity(int n) {
  auto basis = std::make_shared<const SymBasis>(n);
  const int m = basis->size();
  return SymOperator(std::move(basis), GeneralMatrix::identity(m));
}

SymOperator SymOperator::from_map(int n, const std::function<SymMatrix(const SymMatrix&)>& map) {
  auto basis = std::make_shared<const SymBasis>(n);
  const int m = basis->size();
  GeneralMatrix mat(m);
  for (int b = 0; b < m; ++b) {
    const auto col = basis->coordinates(map((*basis)[b]));
    for (int a = 0; a < m; ++a) mat(a, b) = col[static_cast<std::size_t>(a)];
  }
  return SymOperator(std::move(basis), std::move(mat));
}

SymMatrix SymOperator::apply(const SymMatrix& h) const {
  const auto c = basis_->coordinates(h);
  const auto y = mat_ * std::span<const double>(c);
  return basis_->compose(y);
}

double SymOperator::asymmetry() const {
  const double norm = mat_.frobenius_norm();
  if (norm == 0.0) return 0.0;
  return (mat_ - mat_.transpose()).frobenius_norm() / norm;
}

SymOperator SymOperator::symmetrized() const {
  GeneralMatrix s = 0.5 * (mat_ + mat_.transpose());
  SymOperator out(basis_, std::move(s));
  out.presym_asymmetry_ = asymmetry();
  return out;
}

std::vector<double> SymOperator::sym_eigenvalues() const {
  return eig_symmetric(0.5 * (mat_ + mat_.transpose())).lambda;
}

double SymOperator::lambda_min() const { return sym_eigenvalues().front(); }

SymOperator SymOperator::compose(const SymOperator& other) const {
  if (dim() != other.dim()) throw ShapeError("operator composition: dimension mismatch");
  return SymOperator(basis_, mat_ * other.mat_);
}

SymOperator SymOperator::inverse() const { return SymOperator(basis_, matmono::inverse(mat_)); }

SymOperator operator-(const SymOperator& a, const SymOperator& b) {
  return SymOperator(a.basis_ptr(), a.matrix() - b.matrix());
}

SymOperator operator*(double s, const SymOperator& a) { return SymOperator(a.basis_ptr(), s * a.matrix()); }

// ---------------------------------------------------------------------------
// Primary matrix functions

void require_spectrum_in_domain(const ScalarFunction& fn, std::span<const double> lambda) {
  for (double l : lambda) {
    if (!fn.domain.contains(l)) {
      std::ostringstream os;
      os << "eigenvalue " << l << " lies outside the domain " << format_interval(fn.domain) << " of "
         << fn.name;
      throw DomainError(os.str(), l);
    }
  }
}

SymMatrix conjugate(const GeneralMatrix& q, const SymMatrix& a) {
  return SymMatrix(q.transpose() * a.general() * q);
}

SymMatrix apply_primary(const ScalarFunction& fn, const SymMatrix& a) {
  const SpectralDecomposition d = eig(a);
  require_spectrum_in_domain(fn, d.lambda);
  std::vector<double> v(d.lambda.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn.f(d.lambda[i]);
  return d.compose(v);
}

SymOperator frechet(const ScalarFunction& fn, const SymMatrix& a, const DifferencingSpec& spec) {
  spec.validate();
  const SpectralDecomposition d = eig(a);
  require_spectrum_in_domain(fn, d.lambda);
  const GeneralMatrix phi = divided_differences(fn, d.lambda, spec.eig_threshold);
  const GeneralMatrix& q = d.q;
  const GeneralMatrix qt = q.transpose();

  auto basis = std::make_shared<const SymBasis>(a.dim());
  const int m = basis->size();
  const int n = a.dim();
  GeneralMatrix mat(m);
  for (int b = 0; b < m; ++b) {
    GeneralMatrix x = q * (*basis)[b].general() * qt;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) x(i, j) *= phi(i, j);
    const auto col = basis->coordinates(SymMatrix(qt * x * q));
    for (int r = 0; r < m; ++r) mat(r, b) = col[static_cast<std::size_t>(r)];
  }
  SymOperator raw(std::move(basis), std::move(mat));
  SymOperator op = raw.symmetrized();
  if (op.presymmetrization_asymmetry() > 1e-9) {
    throw NumericalError("Frechet operator failed the self-adjointness check", op.presymmetrization_asymmetry());
  }
  return op;
}

SymOperator frechet_exp_integral(const SymMatrix& a, const DifferencingSpec& spec) {
  spec.validate();
  const QuadratureRule rule = gauss_legendre_unit(spec.quadrature_order);
  auto basis = std::make_shared<const SymBasis>(a.dim());
  const int m = basis->size();
  std::vector<GeneralMatrix> acc(static_cast<std::size_t>(m), GeneralMatrix(a.dim()));
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double s = rule.nodes[k];
    const GeneralMatrix left = expm(s * a.general());
    const GeneralMatrix right = expm((1.0 - s) * a.general());
    for (int b = 0; b < m; ++b) {
      acc[static_cast<std::size_t>(b)] += rule.weights[k] * (left * (*basis)[b].general() * right);
    }
  }
  GeneralMatrix mat(m);
  for (int b = 0; b < m; ++b) {
    const auto col = basis->coordinates(SymMatrix(acc[static_cast<std::size_t>(b)]));
    for (int r = 0; r < m; ++r) mat(r, b) = col[static_cast<std::size_t>(r)];
  }
  return SymOperator(std::move(basis), std::move(mat));
}

SymOperator frechet_log_integral(const SymMatrix& a, const DifferencingSpec& spec) {
  spec.validate();
  const auto lambda = eig(a).lambda;
  if (!(lambda.front() > 0.0)) {
    throw DomainError("Dlog requires a positive definite argument", lambda.front());
  }
  // Poles of the integrand sit at t = 1/(1 - lambda): below 0 at distance
  // 1/(lambda_max - 1), above 1 at distance lambda_min/(1 - lambda_min).
  const double inf = std::numeric_limits<double>::infinity();
  const double d0 = lambda.back() > 1.0 ? 1.0 / (lambda.back() - 1.0) : inf;
  const double d1 = lambda.front() < 1.0 ? lambda.front() / (1.0 - lambda.front()) : inf;
  const QuadratureRule rule = gauss_legendre_composite(spec.quadrature_order, graded_breaks(d0, d1));
  const int n = a.dim();
  auto basis = std::make_shared<const SymBasis>(n);
  const int m = basis->size();
  const GeneralMatrix shift = a.general() - GeneralMatrix::identity(n);
  std::vector<GeneralMatrix> acc(static_cast<std::size_t>(m), GeneralMatrix(n));
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const GeneralMatrix r = inverse(rule.nodes[k] * shift + GeneralMatrix::identity(n));
    for (int b = 0; b < m; ++b) {
      acc[static_cast<std::size_t>(b)] += rule.weights[k] * (r * (*basis)[b].general() * r);
    }
  }
  GeneralMatrix mat(m);
  for (int b = 0; b < m; ++b) {
    const auto col = basis->coordinates(SymMatrix(acc[static_cast<std::size_t>(b)]));
    for (int r = 0; r < m; ++r) mat(r, b) = col[static_cast<std::size_t>(r)];
  }
  return SymOperator(std::move(basis), std::move(mat));
}

// ---------------------------------------------------------------------------
// Potentials

double potential_value(const ScalarFunction& fn, const SymMatrix& a) {
  if (!fn.has_antiderivative()) {
    throw ConfigError("function '" + fn.name + "' has no registered antiderivative");
  }
  const auto lambda = eig(a).lambda;
  require_spectrum_in_domain(fn, lambda);
  double w = 0.0;
  for (double l : lambda) w += fn.antiderivative(l);
  return w;
}

double pseudo_potential(const ScalarFunction& fn, const SymMatrix& a, int order) {
  if (!fn.domain.contains(0.0)) {
    throw DomainError("pseudo-potential needs the segment [0, A] inside S_I; 0 is outside the domain of " +
                      fn.name, 0.0);
  }
  const QuadratureRule rule = gauss_legendre_unit(order);
  return integrate_unit(rule, [&](double t) { return inner(apply_primary(fn, t * a), a); });
}

GradientCheckReport potential_gradient_check(const ScalarFunction& fn, const SymMatrix& a, double h) {
  if (!(h > 0.0)) throw PreconditionError("gradient check step must be positive");
  const SymBasis basis(a.dim());
  const SymMatrix grad = apply_primary(fn, a);
  const double w0 = potential_value(fn, a);

  auto sweep = [&](double step) {
    double worst = 0.0;
    for (int b = 0; b < basis.size(); ++b) {
      const SymMatrix& e = basis[b];
      const double wp = potential_value(fn, a + step * e);
      const double wm = potential_value(fn, a - step * e);
      worst = std::max(worst, std::abs((wp - wm) / (2.0 * step) - inner(grad, e)));
    }
    return worst;
  };

  GradientCheckReport r;
  r.h = h;
  r.max_deviation = sweep(h);
  r.max_deviation_half = sweep(0.5 * h);
  r.ratio = r.max_deviation_half > 0.0 ? r.max_deviation / r.max_deviation_half
                                       : std::numeric_limits<double>::infinity();
  const double floor = 100.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(w0)) / h;
  r.exact = r.max_deviation <= floor && r.max_deviation_half <= 2.0 * floor;
  return r;
}

// ---------------------------------------------------------------------------
// Determinant and eigenvalue derivatives at diagonal points

double det_derivative_identity_direction(std::span<const double> a_diag) {
  double s = 0.0;
  for (std::size_t i = 0; i < a_diag.size(); ++i) {
    double p = 1.0;
    for (std::size_t j = 0; j < a_diag.size(); ++j)
      if (j != i) p *= a_diag[j];
    s += p;
  }
  return s;
}

double det_directional_difference(const GeneralMatrix& a, const GeneralMatrix& h, double step) {
  if (!(step > 0.0)) throw PreconditionError("difference step must be positive");
  return (det(a + step * h) - det(a - step * h)) / (2.0 * step);
}

double det_derivative_offdiag_vanishes(std::span<const double> a_diag, const SymMatrix& h_off, double step) {
  if (static_cast<int>(a_diag.size()) != h_off.dim()) throw ShapeError("diagonal and direction differ in size");
  for (int i = 0; i < h_off.dim(); ++i) {
    if (h_off(i, i) != 0.0) throw PreconditionError("direction must have a zero diagonal");
  }
  return det_directional_difference(SymMatrix::diagonal(a_diag).general(), h_off.general(), step);
}

std::vector<double> eigenvalue_shift(std::span<const double> a_diag, const SymMatrix& h, double t) {
  if (static_cast<int>(a_diag.size()) != h.dim()) throw ShapeError("diagonal and direction differ in size");
  std::vector<double> base(a_diag.begin(), a_diag.end());
  std::sort(base.begin(), base.end());
  const auto moved = eig(SymMatrix::diagonal(a_diag) + t * h).lambda;
  std::vector<double> out(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) out[i] = moved[i] - base[i];
  return out;
}

std::vector<double> eigenvalue_offdiag_insensitivity(std::span<const double> a_diag, const SymMatrix& h_off,
                                                     double t, const DifferencingSpec& spec) {
  spec.validate();
  if (static_cast<int>(a_diag.size()) != h_off.dim()) throw ShapeError("diagonal and direction differ in size");
  for (int i = 0; i < h_off.dim(); ++i) {
    if (h_off(i, i) != 0.0) throw PreconditionError("direction must have a zero diagonal");
  }
  std::vector<double> sorted(a_diag.begin(), a_diag.end());
  std::sort(sorted.begin(), sorted.end());
  const double band = 10.0 * spec.eig_threshold * spectral_scale(sorted);
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] - sorted[i - 1] <= band) {
      throw PreconditionError("eigenvalues are not simple (gap below threshold)");
    }
  }
  return eigenvalue_shift(a_diag, h_off, t);
}

IsotropyReport isotropy_conjugation_check(const ScalarFunction& fn, const SymMatrix& a, const GeneralMatrix& q) {
  if (q.dim() != a.dim()) throw ShapeError("rotation and matrix differ in size");
  const double orth = (q.transpose() * q - GeneralMatrix::identity(q.dim())).frobenius_norm();
  if (orth > 1e-10) throw PreconditionError("conjugating matrix is not orthogonal");

  const SymMatrix fa = apply_primary(fn, a);
  const SymMatrix rotated = conjugate(q, a);
  IsotropyReport r;
  r.primary_deviation = (apply_primary(fn, rotated) - conjugate(q, fa)).frobenius_norm();
  r.scale = std::max(1.0, fa.frobenius_norm());
  if (fn.has_antiderivative()) {
    const double w = potential_value(fn, a);
    r.potential_deviation = std::abs(potential_value(fn, rotated) - w);
    r.scale = std::max(r.scale, std::abs(w));
  }
  return r;
}

}  // namespace matmono
