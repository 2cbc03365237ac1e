#include "matmono/jogcalc.hpp"

#include <cmath>
#include <sstream>

#include "matmono/errors.hpp"

namespace matmono {

ProductVerdict product_pd(const SymOperator& a, const SymOperator& b, double tol) {
  if (a.dim() != b.dim()) throw ShapeError("operators act on different Sym(n)");
  const SymOperator ab = a.compose(b);
  ProductVerdict v;
  v.asymmetry_a = a.asymmetry();
  v.asymmetry_b = b.asymmetry();
  v.asymmetry_product = ab.asymmetry();
  v.lambda_min = ab.lambda_min();

  std::ostringstream why;
  if (v.asymmetry_a > tol) {
    why << "A is not self-adjoint (asymmetry " << v.asymmetry_a << ")";
  } else if (v.asymmetry_b > tol) {
    why << "B is not self-adjoint (asymmetry " << v.asymmetry_b << ")";
  } else if (a.lambda_min() <= 0.0) {
    why << "A is not positive definite (lambda_min " << a.lambda_min() << ")";
  } else if (b.lambda_min() <= 0.0) {
    why << "B is not positive definite (lambda_min " << b.lambda_min() << ")";
  } else if (v.asymmetry_product > tol) {
    why << "A o B is not self-adjoint (asymmetry " << v.asymmetry_product << ")";
  }
  if (!why.str().empty()) {
    v.refusal = why.str();
  } else {
    v.pd = v.lambda_min > 0.0;
  }
  return v;
}

OperatorTriple chain_factorization(const StressModel& model, const StrainState& state, double step_factor,
                                   double hypothesis_tol) {
  const int n = state.dim();
  const auto& lg = builtin_function("log");
  const auto& e = builtin_function("exp");

  const auto leg_l = tsts_operator(model, state, step_factor);
  const double h = step_factor * std::max(1.0, state.v().frobenius_norm());
  SymOperator dsigma_dB = SymOperator::from_map(n, [&](const SymMatrix& dir) {
    const SymMatrix plus = model.cauchy(apply_primary(lg, state.v() + h * dir));
    const SymMatrix minus = model.cauchy(apply_primary(lg, state.v() - h * dir));
    return (0.5 / h) * (plus - minus);
  });
  SymOperator dB = frechet(e, state.logv());

  const auto ev = dB.sym_eigenvalues();
  const double cond = ev.back() / ev.front();
  if (!(ev.front() > 0.0) || cond > 1e12) {
    throw NumericalError("derivative of exp at log V is too ill-conditioned to invert", cond);
  }

  OperatorTriple t(dsigma_dB, dB, leg_l.raw);
  t.step = h;
  t.conditioning = cond;
  t.scale = std::max(1.0, leg_l.raw.matrix().frobenius_norm());
  t.residual = (dsigma_dB.compose(dB).matrix() - leg_l.raw.matrix()).frobenius_norm();
  t.lambda_min_dsigma_dB = dsigma_dB.lambda_min();
  t.lambda_min_dsigma_dlogB = leg_l.lambda_min;
  t.lambda_min_dB_dlogB = ev.front();
  t.asymmetry_dsigma_dB = dsigma_dB.asymmetry();
  t.asymmetry_dsigma_dlogB = leg_l.asymmetry;
  t.log_hypothesis = leg_l.asymmetry <= hypothesis_tol && leg_l.lambda_min > 0.0;
  if (t.log_hypothesis) t.propagated_lambda_min = leg_l.raw.compose(dB.inverse()).lambda_min();
  return t;
}

GeneralMatrix path_a() { return GeneralMatrix::from_rows({{1.0, 0.0}, {0.0, 0.125}}); }

GeneralMatrix path_b(double t) { return GeneralMatrix::from_rows({{1.0, -t}, {0.0, 1.0}}); }

PathRecord path_record(double t) {
  const GeneralMatrix ab = path_a() * path_b(t);
  PathRecord r;
  r.t = t;
  r.det_ab = det(ab);
  r.det_sym_ab = det(sym(ab));
  r.invertible = std::abs(r.det_ab) > 1e-12;
  r.sym_pd = classify(sym(ab)).kind == Definiteness::PositiveDefinite;
  r.b_sym_pd = classify(sym(path_b(t))).kind == Definiteness::PositiveDefinite;
  return r;
}

PathExperiment run_path_experiment(int t_steps) {
  if (t_steps < 2) throw PreconditionError("path experiment needs at least 2 grid points");
  PathExperiment e;
  e.a = path_a();
  for (int i = 0; i < t_steps; ++i) e.records.push_back(path_record(static_cast<double>(i) / (t_steps - 1)));

  for (std::size_t i = 0; i + 1 < e.records.size(); ++i) {
    if (e.records[i].det_sym_ab > 0.0 && e.records[i + 1].det_sym_ab <= 0.0) {
      double lo = e.records[i].t;
      double hi = e.records[i + 1].t;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (det(sym(e.a * path_b(mid))) > 0.0 ? lo : hi) = mid;
      }
      e.crossing = 0.5 * (lo + hi);
      break;
    }
  }
  return e;
}

std::string path_csv(const PathExperiment& e) {
  std::ostringstream os;
  os.precision(17);
  os << "t,det_AB,det_sym_AB,sym_pd,invertible\n";
  for (const auto& r : e.records) {
    os << r.t << ',' << r.det_ab << ',' << r.det_sym_ab << ',' << (r.sym_pd ? 1 : 0) << ',' << (r.invertible ? 1 : 0)
       << '\n';
  }
  return os.str();
}

}  // namespace matmono
