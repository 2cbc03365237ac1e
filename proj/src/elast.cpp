#include "matmono/elast.hpp"

#include <cmath>
#include <sstream>

#include "matmono/errors.hpp"

namespace matmono {

const char* to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Hencky: return "hencky";
    case ModelKind::TstsExp: return "tsts";
    case ModelKind::ExpHencky: return "exp-hencky";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view s) {
  if (s == "hencky") return ModelKind::Hencky;
  if (s == "tsts") return ModelKind::TstsExp;
  if (s == "exp-hencky") return ModelKind::ExpHencky;
  throw ConfigError("unknown model '" + std::string(s) + "' (expected hencky, tsts or exp-hencky)");
}

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

StressModel::StressModel(ModelKind kind, MaterialParams params) : kind_(kind), params_(params) {
  const auto& p = params_;
  require(std::isfinite(p.mu) && std::isfinite(p.kappa) && std::isfinite(p.lambda) && std::isfinite(p.k) &&
              std::isfinite(p.k_hat) && std::isfinite(p.sigma_y),
          "material parameters must be finite");
  require(p.mu > 0.0, "mu must be positive");
  require(p.sigma_y >= 0.0, "sigma_y must be non-negative");
  switch (kind_) {
    case ModelKind::Hencky:
      require(p.kappa > 0.0, "kappa must be positive");
      break;
    case ModelKind::TstsExp:
      require(p.k > 3.0 / 8.0, "k must exceed 3/8");
      require(p.k_hat > 1.0 / 8.0, "k_hat must exceed 1/8");
      break;
    case ModelKind::ExpHencky:
      require(p.kappa > 0.0, "kappa must be positive");
      require(p.k > 1.0 / 3.0, "k must exceed 1/3");
      require(p.k_hat > 1.0 / 8.0, "k_hat must exceed 1/8");
      break;
  }
}

double StressModel::energy(const SymMatrix& l) const {
  const auto& p = params_;
  const double tr = trace(l);
  switch (kind_) {
    case ModelKind::Hencky: {
      const double d = dev(l).frobenius_norm();
      return p.mu * d * d + 0.5 * p.kappa * tr * tr;
    }
    case ModelKind::TstsExp: {
      const double nl = l.frobenius_norm();
      return p.mu / p.k * std::exp(p.k * nl * nl) + p.lambda / (2.0 * p.k_hat) * std::exp(p.k_hat * tr * tr);
    }
    case ModelKind::ExpHencky: {
      const double d = dev(l).frobenius_norm();
      return p.mu / p.k * std::exp(p.k * d * d) + p.kappa / (2.0 * p.k_hat) * std::exp(p.k_hat * tr * tr);
    }
  }
  return 0.0;
}

SymMatrix StressModel::kirchhoff(const SymMatrix& l) const {
  const auto& p = params_;
  const int n = l.dim();
  const double tr = trace(l);
  const SymMatrix one = SymMatrix::identity(n);
  switch (kind_) {
    case ModelKind::Hencky:
      return 2.0 * p.mu * dev(l) + (p.kappa * tr) * one;
    case ModelKind::TstsExp: {
      const double nl = l.frobenius_norm();
      return (2.0 * p.mu * std::exp(p.k * nl * nl)) * l + (p.lambda * std::exp(p.k_hat * tr * tr) * tr) * one;
    }
    case ModelKind::ExpHencky: {
      const SymMatrix dl = dev(l);
      const double d = dl.frobenius_norm();
      return (2.0 * p.mu * std::exp(p.k * d * d)) * dl + (p.kappa * std::exp(p.k_hat * tr * tr) * tr) * one;
    }
  }
  return SymMatrix(n);
}

SymMatrix StressModel::cauchy(const SymMatrix& l) const { return std::exp(-trace(l)) * kirchhoff(l); }

StrainState StrainState::from_stretch(const SymMatrix& v) {
  const auto& lg = builtin_function("log");
  return {v, apply_primary(lg, v)};
}

StrainState StrainState::from_log_strain(const SymMatrix& l) {
  const auto& e = builtin_function("exp");
  return {apply_primary(e, l), l};
}

double energy(const StressModel& model, const StrainState& state) { return model.energy(state.logv()); }

SymMatrix kirchhoff_stress(const StressModel& model, const StrainState& state) {
  return model.kirchhoff(state.logv());
}

SymMatrix cauchy_stress(const StressModel& model, const StrainState& state) { return model.cauchy(state.logv()); }

namespace {

SymOperator differenced(const StressModel& model, const SymMatrix& l, double h) {
  return SymOperator::from_map(l.dim(), [&](const SymMatrix& e) {
    return (0.5 / h) * (model.cauchy(l + h * e) - model.cauchy(l - h * e));
  });
}

}  // namespace

TstsOperator tsts_operator(const StressModel& model, const StrainState& state, double step_factor) {
  if (!(step_factor > 0.0)) throw PreconditionError("step factor must be positive");
  const SymMatrix& l = state.logv();
  const double h = step_factor * std::max(1.0, l.frobenius_norm());
  SymOperator raw = differenced(model, l, h);
  SymOperator symm = raw.symmetrized();
  TstsOperator out{raw, symm, raw.asymmetry(), h, symm.lambda_min(), {}};

  const SymOperator half = differenced(model, l, 0.5 * h);
  const double scale = std::max(1.0, raw.matrix().frobenius_norm());
  const double moved = (half.matrix() - raw.matrix()).frobenius_norm();
  if (!std::isfinite(moved) || moved > 1e-5 * scale) {
    std::ostringstream os;
    os << "finite-difference operator moved by " << moved << " (relative " << moved / scale
       << ") when halving the step h=" << h;
    out.warnings.push_back(os.str());
  }
  return out;
}

bool elastic_domain_contains(const SymMatrix& log_strain, double sigma_y) {
  if (!(sigma_y >= 0.0)) throw PreconditionError("sigma_y must be non-negative");
  const double d = dev(log_strain).frobenius_norm();
  return 3.0 * d * d <= 2.0 * sigma_y * sigma_y;
}

bool elastic_domain_contains(const StrainState& state, double sigma_y) {
  return elastic_domain_contains(state.logv(), sigma_y);
}

SampleDomain elastic_domain(double sigma_y) {
  if (!(sigma_y >= 0.0)) throw ConfigError("sigma_y must be non-negative");
  const double radius = sigma_y * std::sqrt(2.0 / 3.0);
  std::ostringstream label;
  label << "elastic(sigma_y=" << sigma_y << ")";
  auto sampler = [radius](Rng& rng, int n, double scale) {
    SymMatrix l = random_symmetric(rng, n, scale);
    const SymMatrix d = dev(l);
    const double nd = d.frobenius_norm();
    const double u = rng.uniform();
    if (nd > radius) {
      const SymMatrix sph = l - d;
      l = sph + (radius * u / nd) * d;
    }
    return l;
  };
  auto membership = [sigma_y](const SymMatrix& l) { return elastic_domain_contains(l, sigma_y); };
  return SampleDomain::custom(label.str(), sampler, membership);
}

MatrixMap cauchy_map(const StressModel& model) {
  return {std::string("cauchy[") + to_string(model.kind()) + "]",
          [model](const SymMatrix& l) { return model.cauchy(l); }, SampleDomain::sym(), std::nullopt};
}

MatrixMap kirchhoff_map(const StressModel& model) {
  return {std::string("kirchhoff[") + to_string(model.kind()) + "]",
          [model](const SymMatrix& l) { return model.kirchhoff(l); }, SampleDomain::sym(), std::nullopt};
}

MonotonicityReport tsts_scan(const StressModel& model, const ScanSpec& spec) {
  MatrixMap map = cauchy_map(model);
  SampleSpec s = spec.sample;
  if (spec.elastic_only) {
    map.domain = elastic_domain(model.params().sigma_y);
    s.domain = map.domain;
  }
  return check_hmon(map, s);
}

MonotonicityReport hill_check(const MaterialParams& params, const SampleSpec& spec) {
  return check_hmon(kirchhoff_map(StressModel(ModelKind::Hencky, params)), spec);
}

MonotonicityReport hill_stretch_scan(const MaterialParams& params, const SampleSpec& spec) {
  const StressModel model(ModelKind::Hencky, params);
  const auto& lg = builtin_function("log");
  MatrixMap map{"kirchhoff-of-stretch[hencky]",
                [model, lg](const SymMatrix& v) { return model.kirchhoff(apply_primary(lg, v)); },
                SampleDomain::psym(), std::nullopt};
  return check_hmon(map, spec);
}

namespace {

SymMatrix grid_strain(int n, double s, double d) {
  std::vector<double> diag(static_cast<std::size_t>(n), d);
  diag[0] += s / std::sqrt(2.0);
  diag[1] -= s / std::sqrt(2.0);
  return SymMatrix::diagonal(diag);
}

}  // namespace

std::optional<HenckyWitness> hencky_violation_search(const MaterialParams& params, int n, double delta) {
  const StressModel model(ModelKind::Hencky, params);
  auto lam = [&](double s, double d) {
    return tsts_operator(model, StrainState::from_log_strain(grid_strain(n, s, d))).lambda_min;
  };

  HenckyWitness w;
  std::optional<std::pair<HenckyGridPoint, HenckyGridPoint>> bracket;
  for (int is = 0; is <= 4; ++is) {
    const double s = 0.25 * is;
    std::optional<HenckyGridPoint> prev;
    for (int id = 0; id <= 12; ++id) {
      const HenckyGridPoint gp{s, -1.0 + 0.25 * id, lam(s, -1.0 + 0.25 * id)};
      w.grid.push_back(gp);
      if (!bracket && prev && prev->lambda_min > 0.0 && gp.lambda_min < 0.0) bracket = {{*prev, gp}};
      prev = gp;
    }
  }
  if (!bracket) return std::nullopt;

  const auto [pos, neg] = *bracket;
  double lo = pos.d;
  double hi = neg.d;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (lam(pos.s, mid) > 0.0 ? lo : hi) = mid;
  }

  const SymMatrix centre = grid_strain(n, neg.s, neg.d);
  const auto op = tsts_operator(model, StrainState::from_log_strain(centre));
  const auto dec = eig_symmetric(op.symmetric.matrix());
  std::vector<double> coords(static_cast<std::size_t>(dec.q.dim()));
  for (int a = 0; a < dec.q.dim(); ++a) coords[static_cast<std::size_t>(a)] = dec.q(0, a);
  const SymMatrix dir = op.symmetric.basis().compose(coords);

  w.x = centre + delta * dir;
  w.y = centre - delta * dir;
  w.margin = hmon_margin(cauchy_map(model), w.y, w.x);
  w.s = neg.s;
  w.d = neg.d;
  w.d_boundary = 0.5 * (lo + hi);
  return w;
}

}  // namespace matmono
