#include "matmono/monocheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "matmono/errors.hpp"

namespace matmono {

const char* to_string(Notion n) {
  switch (n) {
    case Notion::HMon: return "H-mon";
    case Notion::OMon: return "O-mon";
    case Notion::SMon: return "S-mon";
    case Notion::PMon: return "P-mon";
  }
  return "?";
}

Notion parse_notion(std::string_view s) {
  if (s == "h" || s == "H-mon") return Notion::HMon;
  if (s == "o" || s == "O-mon") return Notion::OMon;
  if (s == "s" || s == "S-mon") return Notion::SMon;
  if (s == "p" || s == "P-mon") return Notion::PMon;
  throw ConfigError("unknown monotonicity notion '" + std::string(s) + "'");
}

Interval SampleDomain::spectral_interval() const {
  switch (kind) {
    case Kind::Sym:
    case Kind::Custom: return Interval::real_line();
    case Kind::PSym: return Interval::positive();
    case Kind::Interval: return interval;
  }
  return interval;
}

bool SampleDomain::contains(const SymMatrix& a) const {
  if (kind == Kind::Sym) return true;
  if (kind == Kind::Custom) return !membership || membership(a);
  const Interval iv = spectral_interval();
  const auto lam = eig(a).lambda;
  return iv.contains(lam.front()) && iv.contains(lam.back());
}

SymMatrix SampleDomain::sample(Rng& rng, int n, double scale) const {
  if (kind == Kind::Custom) {
    if (!sampler) throw ConfigError("custom domain '" + label + "' has no sampler");
    return sampler(rng, n, scale);
  }
  const Interval iv = spectral_interval();
  const bool lo_inf = std::isinf(iv.lo);
  const bool hi_inf = std::isinf(iv.hi);
  if (kind == Kind::Sym || (lo_inf && hi_inf)) return random_symmetric(rng, n, scale);
  if (kind == Kind::PSym) return random_psym(rng, n, scale);
  if (hi_inf) return iv.lo * SymMatrix::identity(n) + random_psym(rng, n, scale);
  if (lo_inf) return iv.hi * SymMatrix::identity(n) - random_psym(rng, n, scale);
  std::vector<double> lam(static_cast<std::size_t>(n));
  for (auto& l : lam) {
    do {
      l = rng.uniform(iv.lo, iv.hi);
    } while (!iv.contains(l));
  }
  return conjugate(random_orthogonal(rng, n), SymMatrix::diagonal(lam));
}

std::string SampleDomain::describe() const {
  switch (kind) {
    case Kind::Sym: return "Sym";
    case Kind::PSym: return "PSym";
    case Kind::Custom: return label;
    case Kind::Interval: {
      std::ostringstream os;
      os << "S(" << interval.lo << "," << interval.hi << ")";
      return os.str();
    }
  }
  return "?";
}

MatrixMap primary_map(const ScalarFunction& fn, SampleDomain domain) {
  return {fn.name, [fn](const SymMatrix& a) { return apply_primary(fn, a); }, domain, fn};
}

MatrixMap det_identity_map() {
  return {"det-identity", [](const SymMatrix& c) { return det(c) * SymMatrix::identity(c.dim()); },
          SampleDomain::psym(), std::nullopt};
}

MatrixMap builtin_map(std::string_view name) {
  if (name == "det-identity") return det_identity_map();
  const auto& fn = builtin_function(name);
  const bool psym = name == "square" || name == "log";
  return primary_map(fn, psym ? SampleDomain::psym() : SampleDomain::sym());
}

std::vector<std::string> builtin_map_names() {
  auto names = builtin_function_names();
  names.emplace_back("det-identity");
  return names;
}

void SampleSpec::validate() const {
  if (count < 1) throw ConfigError("sample count must be at least 1");
  if (!(scale > 0.0)) throw ConfigError("sample scale must be positive");
  if (n < 2 || n > kMaxDim) throw ConfigError("dimension must lie in [2, 8]");
  if (!(tol >= 0.0)) throw ConfigError("tolerance must be non-negative");
  if (max_retries < 1) throw ConfigError("max_retries must be at least 1");
}

double hmon_margin(const MatrixMap& map, const SymMatrix& a, const SymMatrix& b) {
  const SymMatrix d = b - a;
  const double nn = inner(d, d);
  if (nn == 0.0) throw PreconditionError("H-mon margin needs A != B");
  return inner(map.eval(b) - map.eval(a), d) / nn;
}

double omon_margin(const MatrixMap& map, const SymMatrix& a, const SymMatrix& p) {
  const double np = p.frobenius_norm();
  if (np == 0.0) throw PreconditionError("O-mon margin needs a nonzero increment");
  return eig(map.eval(a + p) - map.eval(a)).lambda.front() / np;
}

double pmon_margin(const MatrixMap& map, const SymMatrix& a, const SymMatrix& h) {
  const double nn = inner(h, h);
  if (nn == 0.0) throw PreconditionError("P-mon margin needs a nonzero increment");
  return inner(map.eval(a + h) - map.eval(a), h) / nn;
}

double replay_margin(Notion notion, const MatrixMap& map, const Witness& w) {
  switch (notion) {
    case Notion::HMon: return hmon_margin(map, w.a, w.b_or_h);
    case Notion::OMon: return omon_margin(map, w.a, w.b_or_h);
    case Notion::PMon: return pmon_margin(map, w.a, w.b_or_h);
    case Notion::SMon: break;
  }
  throw PreconditionError("S-mon witnesses are scalar pairs");
}

namespace {

struct Pair {
  SymMatrix a;
  SymMatrix second;
};

// Draws (A, second) for sample `index`, retrying until every point the
// margin will evaluate lies in the map's domain.
Pair draw_pair(Notion notion, const MatrixMap& map, const SampleSpec& spec, std::uint64_t index) {
  const SampleDomain dom = spec.domain.value_or(map.domain);
  Rng rng = Rng::stream(spec.seed, index);
  for (int attempt = 0; attempt < spec.max_retries; ++attempt) {
    SymMatrix a = dom.sample(rng, spec.n, spec.scale);
    SymMatrix second;
    SymMatrix other;
    if (notion == Notion::HMon) {
      second = dom.sample(rng, spec.n, spec.scale);
      other = second;
      if ((second - a).frobenius_norm() == 0.0) continue;
    } else {
      second = random_pd(rng, spec.n, spec.scale);
      other = a + second;
    }
    if (map.domain.contains(a) && map.domain.contains(other)) return {std::move(a), std::move(second)};
  }
  std::ostringstream os;
  os << "could not draw sample " << index << " inside " << map.domain.describe() << " after " << spec.max_retries
     << " attempts";
  throw DomainError(os.str());
}

MonotonicityReport run_pairs(Notion notion, const MatrixMap& map, const SampleSpec& spec) {
  spec.validate();
  MonotonicityReport r;
  r.notion = notion;
  r.map = map.name;
  r.n = spec.n;
  r.seed = spec.seed;
  r.worst_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < spec.count; ++i) {
    const Pair p = draw_pair(notion, map, spec, static_cast<std::uint64_t>(i));
    const Witness w{p.a, p.second, 0.0};
    const double margin = replay_margin(notion, map, w);
    ++r.samples;
    r.worst_margin = std::min(r.worst_margin, margin);
    if (std::abs(margin) <= spec.tol) {
      ++r.boundary_count;
    } else if (margin < -spec.tol) {
      ++r.violations;
      if (static_cast<int>(r.witnesses.size()) < spec.max_witnesses) r.witnesses.push_back({p.a, p.second, margin});
    }
  }
  return r;
}

}  // namespace

MonotonicityReport check_hmon(const MatrixMap& map, const SampleSpec& spec) {
  return run_pairs(Notion::HMon, map, spec);
}

MonotonicityReport check_omon(const MatrixMap& map, const SampleSpec& spec) {
  return run_pairs(Notion::OMon, map, spec);
}

MonotonicityReport check_pmon(const MatrixMap& map, const SampleSpec& spec) {
  return run_pairs(Notion::PMon, map, spec);
}

std::vector<double> smon_grid(const Interval& domain, int count) {
  if (count < 2) throw ConfigError("S-mon grid needs at least 2 points");
  std::vector<double> pts(static_cast<std::size_t>(count));
  const bool lo_inf = std::isinf(domain.lo);
  const bool hi_inf = std::isinf(domain.hi);
  const double last = count - 1;
  for (int i = 0; i < count; ++i) {
    const double u = i / last;
    double x;
    if (lo_inf && hi_inf) {
      x = -8.0 + 16.0 * u;
    } else if (hi_inf) {
      x = domain.lo + std::pow(10.0, -3.0 + 6.0 * u);
    } else if (lo_inf) {
      x = domain.hi - std::pow(10.0, 3.0 - 6.0 * u);
    } else {
      x = domain.lo + (domain.hi - domain.lo) * (i + 1.0) / (count + 1.0);
    }
    pts[static_cast<std::size_t>(i)] = x;
  }
  return pts;
}

ScalarReport check_smon(const ScalarFunction& fn, std::vector<double> points, double tol) {
  std::erase_if(points, [&](double x) { return !fn.domain.contains(x); });
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  ScalarReport r;
  r.map = fn.name;
  r.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double a = points[i];
    const double b = points[i + 1];
    const double margin = (fn.f(b) - fn.f(a)) / (b - a);
    ++r.samples;
    r.worst_margin = std::min(r.worst_margin, margin);
    if (std::abs(margin) <= tol) {
      ++r.boundary_count;
    } else if (margin < -tol) {
      ++r.violations;
      if (r.witnesses.size() < 16) r.witnesses.push_back({a, b, margin});
    }
  }
  return r;
}

ScalarReport check_smon(const ScalarFunction& fn, int count, double tol) {
  return check_smon(fn, smon_grid(fn.domain, count), tol);
}

MonotonicityReport check(Notion notion, const MatrixMap& map, const SampleSpec& spec) {
  switch (notion) {
    case Notion::HMon: return check_hmon(map, spec);
    case Notion::OMon: return check_omon(map, spec);
    case Notion::PMon: return check_pmon(map, spec);
    case Notion::SMon: break;
  }
  if (!map.is_primary()) throw ConfigError("S-mon applies only to primary matrix functions; '" + map.name + "' is not");
  spec.validate();
  const Interval iv = spec.domain.value_or(map.domain).spectral_interval();
  const auto s = check_smon(*map.primary, smon_grid(iv, std::max(2, spec.count)), spec.tol);
  MonotonicityReport r;
  r.notion = Notion::SMon;
  r.map = map.name;
  r.n = 1;
  r.samples = s.samples;
  r.violations = s.violations;
  r.boundary_count = s.boundary_count;
  r.worst_margin = s.worst_margin;
  r.seed = spec.seed;
  r.scalar_witnesses = s.witnesses;
  return r;
}

bool ImplicationPattern::consistent() const {
  if (o.value_or(false) && p.has_value() && !*p) return false;
  if (s.has_value()) {
    if (h.has_value() && *h != *s) return false;
    if (p.has_value() && *p != *s) return false;
  }
  return true;
}

std::string ImplicationPattern::pattern() const {
  auto mark = [](const std::optional<bool>& v) { return v.has_value() ? (*v ? "+" : "-") : "."; };
  std::string out = "H";
  out += mark(h);
  out += " O";
  out += mark(o);
  out += " S";
  out += mark(s);
  out += " P";
  out += mark(p);
  return out;
}

ImplicationPattern implication_matrix(const MatrixMap& map, const SampleSpec& spec) {
  ImplicationPattern out;
  out.map = map.name;
  for (Notion notion : {Notion::HMon, Notion::OMon, Notion::SMon, Notion::PMon}) {
    if (notion == Notion::SMon && !map.is_primary()) continue;
    auto r = check(notion, map, spec);
    const bool pass = r.passed();
    switch (notion) {
      case Notion::HMon: out.h = pass; break;
      case Notion::OMon: out.o = pass; break;
      case Notion::SMon: out.s = pass; break;
      case Notion::PMon: out.p = pass; break;
    }
    out.reports.push_back(std::move(r));
  }
  return out;
}

std::optional<Witness> find_omon_witness(const MatrixMap& map, int n, std::uint64_t seed, int random_trials,
                                         int refine_iterations) {
  const auto& e = builtin_function("exp");
  const SymBasis basis(n);
  const int m = basis.size();
  constexpr double kBox = 3.0;

  // A = exp(S), P = exp(T): both stay positive definite under any move.
  // The search objective lambda_min(D) / ||D|| is scale free.
  auto objective = [&](const std::vector<double>& x) {
    const auto s = basis.compose(std::span<const double>(x).subspan(0, static_cast<std::size_t>(m)));
    const auto t = basis.compose(std::span<const double>(x).subspan(static_cast<std::size_t>(m)));
    const auto a = apply_primary(e, s);
    const auto p = apply_primary(e, t);
    const SymMatrix d = map.eval(a + p) - map.eval(a);
    const double nd = d.frobenius_norm();
    return nd == 0.0 ? 0.0 : eig(d).lambda.front() / nd;
  };

  Rng rng(seed);
  std::vector<double> best(static_cast<std::size_t>(2 * m));
  double best_val = std::numeric_limits<double>::infinity();
  for (int k = 0; k < random_trials; ++k) {
    std::vector<double> x(best.size());
    for (auto& v : x) v = std::clamp(rng.normal(), -kBox, kBox);
    const double val = objective(x);
    if (val < best_val) {
      best_val = val;
      best = x;
    }
  }

  double step = 0.25;
  for (int it = 0; it < refine_iterations && step > 1e-6; ++it) {
    bool improved = false;
    for (std::size_t c = 0; c < best.size(); ++c) {
      for (double dir : {1.0, -1.0}) {
        auto x = best;
        x[c] = std::clamp(x[c] + dir * step, -kBox, kBox);
        const double val = objective(x);
        if (val < best_val) {
          best_val = val;
          best = std::move(x);
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }

  if (!(best_val < 0.0)) return std::nullopt;
  const auto s = basis.compose(std::span<const double>(best).subspan(0, static_cast<std::size_t>(m)));
  const auto t = basis.compose(std::span<const double>(best).subspan(static_cast<std::size_t>(m)));
  Witness w{apply_primary(e, s), apply_primary(e, t), 0.0};
  w.margin = omon_margin(map, w.a, w.b_or_h);
  return w;
}

SymOperator fd_operator(const MatrixMap& map, const SymMatrix& a, double h) {
  if (!(h > 0.0)) throw PreconditionError("finite-difference step must be positive");
  return SymOperator::from_map(a.dim(), [&](const SymMatrix& e) {
    return (0.5 / h) * (map.eval(a + h * e) - map.eval(a - h * e));
  });
}

namespace {

SymMatrix segment_point(const SymMatrix& a0, const SymMatrix& a1, double t) {
  return (1.0 - t) * a0 + t * a1;
}

void require_steps(int steps, const SymMatrix& a0, const SymMatrix& a1) {
  if (steps < 1) throw PreconditionError("curve needs at least one step");
  if (a0.dim() != a1.dim()) throw ShapeError("curve endpoints differ in dimension");
}

}  // namespace

CurveTrace lambda_min_along_curve(const OperatorField& field, const SymMatrix& a0, const SymMatrix& a1, int steps,
                                  double tol) {
  require_steps(steps, a0, a1);
  CurveTrace trace;
  for (int i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    std::vector<double> ev;
    try {
      ev = field(segment_point(a0, a1, t)).sym_eigenvalues();
    } catch (const DomainError& e) {
      std::ostringstream os;
      os << e.what() << " (curve left the domain at t=" << t << ")";
      throw DomainError(os.str(), e.value(), t);
    }
    double min_abs = std::numeric_limits<double>::infinity();
    for (double v : ev) min_abs = std::min(min_abs, std::abs(v));
    trace.points.push_back({t, ev.front(), min_abs});
  }

  const CurvePoint* last = nullptr;
  bool any_pos = false;
  bool any_neg = false;
  for (const auto& p : trace.points) {
    if (std::abs(p.lambda_min) <= tol) continue;
    const bool pos = p.lambda_min > 0.0;
    (pos ? any_pos : any_neg) = true;
    if (last != nullptr && (last->lambda_min > 0.0) != pos && !trace.bracket) trace.bracket = {last->t, p.t};
    last = &p;
  }
  trace.sign_change = any_pos && any_neg;
  return trace;
}

std::vector<std::pair<double, double>> rayleigh_along_curve(const MatrixMap& map, const SymMatrix& a0,
                                                            const SymMatrix& a1, int steps, double h) {
  require_steps(steps, a0, a1);
  const SymMatrix dir = a1 - a0;
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    const SymMatrix c = segment_point(a0, a1, t);
    const SymMatrix d = (0.5 / h) * (map.eval(c + h * dir) - map.eval(c - h * dir));
    out.emplace_back(t, inner(d, dir));
  }
  return out;
}

double CatalogEntry::abs_error() const { return std::abs(computed - expected); }

double skew_exp_inner(double alpha) {
  const auto k = GeneralMatrix::from_rows({{0.0, -alpha}, {alpha, 0.0}});
  const auto diff = expm(k) - expm(-1.0 * k);
  return inner(diff, 2.0 * k);
}

namespace {

double det_hmon_quantity(const std::vector<double>& a, const std::vector<double>& b) {
  const auto g = det_identity_map();
  const auto ma = SymMatrix::diagonal(a);
  const auto mb = SymMatrix::diagonal(b);
  return inner(g.eval(mb) - g.eval(ma), mb - ma);
}

}  // namespace

std::vector<CatalogEntry> counterexample_catalog() {
  using std::numbers::pi;
  std::vector<CatalogEntry> out;

  for (int k = 0; k <= 10; ++k) {
    const double alpha = k * pi / 4.0;
    std::ostringstream name;
    name << "skew-exp alpha=" << k << "pi/4";
    out.push_back({name.str(), 8.0 * alpha * std::sin(alpha), skew_exp_inner(alpha)});
  }
  out.push_back({"skew-exp alpha=3pi/2", -12.0 * pi, skew_exp_inner(1.5 * pi)});

  out.push_back({"det-H-mon", -1.0, det_hmon_quantity({3, 2}, {5, 1})});
  out.push_back({"det-H-mon n=4 padded", -1.0, det_hmon_quantity({3, 2, 1, 1}, {5, 1, 1, 1})});

  {
    // <Dg[C].H, K> - <H, Dg[C].K> at C = diag(3,2), H = E11, K = E22
    const std::vector<double> c{3.0, 2.0};
    const auto op = fd_operator(det_identity_map(), SymMatrix::diagonal(c), 1e-3);
    const std::vector<double> e11{1.0, 0.0};
    const std::vector<double> e22{0.0, 1.0};
    const auto h = SymMatrix::diagonal(e11);
    const auto k = SymMatrix::diagonal(e22);
    out.push_back({"det-Dg-asymmetry", -1.0, inner(op.apply(h), k) - inner(h, op.apply(k))});
  }

  {
    const std::vector<double> a{2.0, 3.0, 5.0};
    out.push_back({"det-derivative diag(2,3,5).1 formula", 31.0, det_derivative_identity_direction(a)});
    out.push_back({"det-derivative diag(2,3,5).1 central-difference", 31.0,
                   det_directional_difference(SymMatrix::diagonal(a).general(), GeneralMatrix::identity(3), 1e-5),
                   1e-6});
  }

  {
    const auto ab1 = GeneralMatrix::from_rows({{1.0, 0.0}, {0.0, 0.125}}) *
                     GeneralMatrix::from_rows({{1.0, -1.0}, {0.0, 1.0}});
    out.push_back({"det-sym-AB1", -0.125, det(sym(ab1))});
  }
  return out;
}

}  // namespace matmono
