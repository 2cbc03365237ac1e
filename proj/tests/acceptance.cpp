// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "matmono/cli.hpp"
#include "matmono/elast.hpp"
#include "matmono/golden.hpp"
#include "matmono/jogcalc.hpp"
#include "matmono/json_io.hpp"
#include "matmono/monocheck.hpp"
#include "matmono/primfn.hpp"
#include "matmono/rng.hpp"

using namespace matmono;

namespace {

std::string fixture(const char* name) { return std::string(MATMONO_FIXTURE_DIR) + "/" + name; }

struct Result {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string sci(double x) {
  std::ostringstream os;
  os << std::setprecision(2) << std::scientific << x;
  return os.str();
}

SymMatrix sample_in(const ScalarFunction& fn, Rng& rng, int n) {
  return fn.domain.lo >= 0.0 ? random_psym(rng, n, 1.0) : random_symmetric(rng, n, 1.0);
}

double rel(const SymOperator& a, const SymOperator& b) {
  return (a - b).matrix().frobenius_norm() / std::max(1e-300, b.matrix().frobenius_norm());
}

Result golden_values() {
  Result r;
  using std::numbers::pi;
  double worst_skew = 0.0;
  for (int k = 0; k <= 10; ++k) {
    const double alpha = k * pi / 4.0;
    worst_skew = std::max(worst_skew, std::abs(skew_exp_inner(alpha) - 8.0 * alpha * std::sin(alpha)));
  }
  r.require(worst_skew <= 1e-9, "8 alpha sin alpha grid");
  const double at_3pi2 = skew_exp_inner(1.5 * pi);
  r.require(std::abs(at_3pi2 + 12.0 * pi) <= 1e-9, "-12 pi at 3pi/2");

  // unnormalized <g(B) - g(A), B - A>
  const auto g = det_identity_map();
  auto det_quantity = [&](std::vector<double> a, std::vector<double> b) {
    const auto sa = SymMatrix::diagonal(a);
    const auto sb = SymMatrix::diagonal(b);
    return inner(g.eval(sb) - g.eval(sa), sb - sa);
  };
  const double d2 = det_quantity({3, 2}, {5, 1});
  const double d4 = det_quantity({3, 2, 1, 1}, {5, 1, 1, 1});
  r.require(std::abs(d2 + 1.0) <= 1e-9 && std::abs(d4 + 1.0) <= 1e-9, "det H-mon -1");

  const auto e = run_path_experiment(101);
  double worst_det = 0.0;
  for (const auto& rec : e.records) worst_det = std::max(worst_det, std::abs(rec.det_ab - 0.125));
  r.require(std::abs(path_record(1.0).det_sym_ab + 0.125) <= 1e-9, "det sym(A B_1)");
  r.require(worst_det <= 1e-9, "det(A B_t) on grid");

  const std::vector<double> a{2, 3, 5};
  const double formula = det_derivative_identity_direction(a);
  const double cd = det_directional_difference(SymMatrix::diagonal(a).general(), GeneralMatrix::identity(3), 1e-5);
  r.require(std::abs(formula - 31.0) <= 1e-9, "D det formula");
  r.require(std::abs(cd - 31.0) <= 1e-6, "D det central difference");

  double worst_pp = 0.0;
  for (const char* name : {"id", "exp"}) {
    const auto& fn = builtin_function(name);
    for (int i = 0; i < 20; ++i) {
      Rng rng = Rng::stream(101, static_cast<std::uint64_t>(i));
      const int n = 2 + i % 3;
      const auto s = random_symmetric(rng, n, 1.0);
      const auto ev = eig(s).lambda;
      double closed = -n * fn.antiderivative(0.0);
      for (double l : ev) closed += fn.antiderivative(l);
      worst_pp = std::max(worst_pp, std::abs(pseudo_potential(fn, s) - closed));
    }
  }
  r.require(worst_pp <= 1e-7, "pseudo-potential");

  const auto rows = golden_table();
  r.require(all_passed(rows), "golden table");
  r.detail << "skew grid max|err| " << sci(worst_skew) << ", 3pi/2 " << at_3pi2 << ", det H-mon " << d2 << "/" << d4
           << ", D det " << formula << "/" << std::setprecision(12) << cd << std::setprecision(6)
           << ", pseudo-potential max|err| " << sci(worst_pp) << ", " << rows.size() << " golden rows";
  return r;
}

Result self_adjointness() {
  Result r;
  double worst = 0.0;
  int count = 0;
  for (const char* name : {"exp", "log", "square", "cube", "cubic-mono"}) {
    const auto& fn = builtin_function(name);
    for (int n = 2; n <= 4; ++n) {
      for (int i = 0; i < 200; ++i) {
        Rng rng = Rng::stream(200 + n, static_cast<std::uint64_t>(i));
        worst = std::max(worst, frechet(fn, sample_in(fn, rng, n)).presymmetrization_asymmetry());
        ++count;
      }
    }
  }
  r.require(worst <= 1e-9, "primary operators self-adjoint");

  const auto g = det_identity_map();
  const double a2 = fd_operator(g, SymMatrix::diagonal(std::vector<double>{3, 2})).asymmetry();
  const double a3 = fd_operator(g, SymMatrix::diagonal(std::vector<double>{2, 3, 5})).asymmetry();
  r.require(std::min(a2, a3) >= 0.1, "det identity asymmetric");
  r.detail << count << " primary operators, max asymmetry " << sci(worst) << "; det*1 asymmetry " << a2
           << " at diag(3,2), " << a3 << " at diag(2,3,5)";
  return r;
}

Result integral_vs_divided() {
  Result r;
  double worst_exp = 0.0;
  double worst_log = 0.0;
  double min_lambda = INFINITY;
  for (int i = 0; i < 100; ++i) {
    Rng rng = Rng::stream(300, static_cast<std::uint64_t>(i));
    const int n = 2 + i % 3;
    const auto s = random_symmetric(rng, n, 1.0);
    const auto dd = frechet(builtin_function("exp"), s);
    const auto in = frechet_exp_integral(s);
    worst_exp = std::max(worst_exp, rel(in, dd));
    min_lambda = std::min({min_lambda, dd.lambda_min(), in.lambda_min()});

    const auto p = random_psym(rng, n, 1.0);
    const auto ld = frechet(builtin_function("log"), p);
    const auto li = frechet_log_integral(p);
    worst_log = std::max(worst_log, rel(li, ld));
    min_lambda = std::min({min_lambda, ld.lambda_min(), li.lambda_min()});
  }
  r.require(worst_exp <= 1e-7 && worst_log <= 1e-7, "agreement");
  r.require(min_lambda > 0.0, "positive definite");
  r.detail << "Dexp max rel " << sci(worst_exp) << ", Dlog max rel " << sci(worst_log) << ", min lambda_min "
           << min_lambda;
  return r;
}

Result potentials() {
  Result r;
  double lo = INFINITY;
  double hi = -INFINITY;
  int exact = 0;
  int checked = 0;
  for (const auto& name : builtin_function_names()) {
    const auto& fn = builtin_function(name);
    if (!fn.has_antiderivative()) continue;
    for (int i = 0; i < 5; ++i) {
      Rng rng = Rng::stream(400, static_cast<std::uint64_t>(i));
      const auto rep = potential_gradient_check(fn, sample_in(fn, rng, 3), 1e-2);
      ++checked;
      if (rep.exact) {
        ++exact;
        continue;
      }
      lo = std::min(lo, rep.ratio);
      hi = std::max(hi, rep.ratio);
    }
  }
  r.require(lo >= 3.5 && hi <= 4.5, "halving ratio");

  double worst_id = 0.0;
  for (const auto& name : builtin_function_names()) {
    const auto& fn = builtin_function(name);
    for (int n = 2; n <= 4; ++n) {
      const auto diff = frechet(fn, SymMatrix::identity(n)) - fn.df(1.0) * SymOperator::identity(n);
      worst_id = std::max(worst_id, diff.matrix().frobenius_norm());
    }
  }
  r.require(worst_id <= 1e-12, "Df[1]");
  r.detail << checked << " gradient checks, ratio in [" << lo << ", " << hi << "], " << exact
           << " exact (quadratic W); Df[1] - f'(1) id max " << sci(worst_id);
  return r;
}

Result patterns() {
  Result r;
  const SampleSpec spec;
  struct Expect {
    const char* map;
    std::optional<bool> h, o, s, p;
  };
  const std::vector<Expect> expected = {{"square", true, false, true, true},
                                        {"det-identity", false, true, std::nullopt, true},
                                        {"log", true, std::nullopt, true, true},
                                        {"exp", true, std::nullopt, true, true}};
  for (const auto& ex : expected) {
    const auto pat = implication_matrix(builtin_map(ex.map), spec);
    bool ok = pat.consistent() && pat.h == ex.h && pat.s == ex.s && pat.p == ex.p;
    if (ex.o) ok = ok && pat.o == ex.o;
    r.require(ok, std::string(ex.map) + " pattern");
    r.detail << ex.map << " " << pat.pattern() << "; ";
  }

  const auto j = read_json_file(fixture("square_omon_witness.json"));
  const auto w = witness_from_fixture(j);
  const double replay = replay_margin(Notion::OMon, builtin_map("square"), w);
  r.require(replay < 0.0 && std::abs(replay - w.margin) <= 1e-12, "persisted square witness");
  r.detail << "square O-mon witness replays to " << replay;
  return r;
}

struct ElasticityResult {
  Result main;
  std::string info;
};

ElasticityResult elasticity() {
  ElasticityResult out;
  Result& r = out.main;
  SampleSpec s3;
  s3.n = 3;

  int hill_violations = 0;
  for (auto [mu, kappa] : {std::pair{1.0, 1.0}, {0.2, 5.0}, {3.0, 0.1}, {1.0, 2.0}, {0.5, 0.5}}) {
    hill_violations += hill_check(MaterialParams{mu, kappa, 1, 1, 1, 0}, s3).violations;
  }
  r.require(hill_violations == 0, "Hill");

  auto margin_spread = [&](double mu, double kappa) {
    const auto map = kirchhoff_map(StressModel(ModelKind::Hencky, MaterialParams{mu, kappa, 1, 1, 1, 0}));
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      Rng rng = Rng::stream(s3.seed, static_cast<std::uint64_t>(i));
      const auto a = random_symmetric(rng, 3, 1.0);
      const auto b = random_symmetric(rng, 3, 1.0);
      worst = std::max(worst, std::abs(hmon_margin(map, a, b) - 2.0 * mu));
    }
    return worst;
  };
  const double literal = margin_spread(1.0, 2.0);
  r.require(literal <= 1e-12, "2mu = kappa margin == 2mu");
  const double lateral = margin_spread(1.0, 2.0 / 3.0);
  out.info = "3 kappa = 2 mu (mu = 1, kappa = 2/3): max |margin - 2mu| = " + sci(lateral) +
             (lateral <= 1e-12 ? " (PASS)" : " (FAIL)");

  const MaterialParams unit{1, 1, 1, 1, 1, 0};
  const auto hw = hencky_violation_search(unit, 3);
  double hencky_margin = NAN;
  if (hw) hencky_margin = hmon_margin(cauchy_map(StressModel(ModelKind::Hencky, unit)), hw->y, hw->x);
  r.require(hw.has_value() && hencky_margin < 0.0, "Hencky witness");

  ScanSpec scan;
  const auto tsts = tsts_scan(StressModel(ModelKind::TstsExp, unit), scan);
  r.require(tsts.violations == 0 && tsts.samples == 1000, "TSTS scan");

  const auto eh_model = parse_model(fixture("exp_hencky_elastic.json"));
  scan.elastic_only = true;
  const auto eh = tsts_scan(eh_model, scan);
  r.require(eh.violations == 0, "exp-Hencky in elastic domain");

  r.detail << "Hill violations " << hill_violations << " over 5 settings; 2mu = kappa max |margin - 2mu| "
           << sci(literal) << "; Hencky witness margin " << hencky_margin << " (boundary d = "
           << (hw ? hw->d_boundary : NAN) << "); TSTS violations " << tsts.violations << "; exp-Hencky violations "
           << eh.violations;
  return out;
}

Result spectral_identities() {
  Result r;
  double lo = INFINITY;
  double hi = -INFINITY;
  for (int i = 0; i < 50; ++i) {
    Rng rng = Rng::stream(700, static_cast<std::uint64_t>(i));
    const int n = 2 + i % 3;
    std::vector<double> a(static_cast<std::size_t>(n));
    double base = rng.uniform(-2.0, 0.0);
    for (auto& x : a) x = (base += rng.uniform(0.5, 1.5));
    SymMatrix h(n);
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) h.set(p, q, rng.normal());
    }
    auto size = [&](double t) {
      double m = 0.0;
      for (double d : eigenvalue_offdiag_insensitivity(a, h, t)) m = std::max(m, std::abs(d));
      return m;
    };
    const double ratio = size(1e-2) / size(5e-3);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  r.require(lo >= 3.5 && hi <= 4.5, "O(t^2)");

  double worst_iso = 0.0;
  const auto names = builtin_function_names();
  for (int i = 0; i < 100; ++i) {
    Rng rng = Rng::stream(701, static_cast<std::uint64_t>(i));
    const auto& fn = builtin_function(names[static_cast<std::size_t>(i) % names.size()]);
    const int n = 2 + i % 3;
    const auto rep = isotropy_conjugation_check(fn, sample_in(fn, rng, n), random_orthogonal(rng, n));
    worst_iso = std::max(worst_iso, rep.max_deviation() / rep.scale);
  }
  r.require(worst_iso <= 1e-9, "isotropy");

  double worst_eig = 0.0;
  for (int i = 0; i < 100; ++i) {
    Rng rng = Rng::stream(702, static_cast<std::uint64_t>(i));
    const double a = rng.normal();
    const double b = rng.normal();
    const double c = rng.normal();
    const double mid = 0.5 * (a + c);
    const double rad = std::hypot(0.5 * (a - c), b);
    const auto ev = eig(SymMatrix(GeneralMatrix::from_rows({{a, b}, {b, c}}))).lambda;
    worst_eig = std::max({worst_eig, std::abs(ev[0] - (mid - rad)), std::abs(ev[1] - (mid + rad))});
  }
  r.require(worst_eig <= 1e-12, "2x2 eigenvalues");
  r.detail << "off-diagonal ratio in [" << lo << ", " << hi << "] over 50; isotropy max rel " << sci(worst_iso)
           << " over 100; 2x2 closed form max|err| " << sci(worst_eig);
  return r;
}

SymOperator with_spectrum(const GeneralMatrix& q, const std::vector<double>& ev, int n) {
  GeneralMatrix d(q.dim());
  for (int i = 0; i < q.dim(); ++i) d(i, i) = ev[static_cast<std::size_t>(i)];
  return SymOperator(SymOperator::identity(n).basis_ptr(), q.transpose() * d * q);
}

Result jogcalc() {
  Result r;
  int total = 0;
  int refused = 0;
  for (int k = 0; k < 300; ++k) {
    Rng rng = Rng::stream(800, static_cast<std::uint64_t>(k));
    const int n = 2 + k % 2;
    const int m = sym_dim(n);
    std::vector<double> ea(static_cast<std::size_t>(m));
    std::vector<double> eb(static_cast<std::size_t>(m));
    for (auto& x : ea) x = std::exp(rng.uniform(-2.0, 2.0));
    for (auto& x : eb) x = std::exp(rng.uniform(-2.0, 2.0));
    auto a = with_spectrum(random_orthogonal(rng, m), ea, n);
    auto b = with_spectrum(random_orthogonal(rng, m), eb, n);
    switch (k % 3) {
      case 0: break;  // non-commuting positive pair
      case 1: {       // A not self-adjoint
        GeneralMatrix skew = a.matrix();
        skew(0, m - 1) += 0.5;
        a = SymOperator(a.basis_ptr(), skew);
        break;
      }
      case 2:  // B indefinite
        b = SymOperator(b.basis_ptr(), b.matrix() - (eb.back() + 1.0) * GeneralMatrix::identity(m));
        break;
    }
    const auto v = product_pd(a, b);
    ++total;
    if (v.refused()) ++refused;
  }
  r.require(refused == total, "refusal rate");

  const auto e = run_path_experiment(101);
  const auto a = path_a();
  // det(sym(A B_t)) = a1 a2 - a1^2 t^2 / 4
  const double root = 2.0 * std::sqrt(a(1, 1) / a(0, 0));
  const double err = e.crossing ? std::abs(*e.crossing - root) : INFINITY;
  r.require(err <= 1e-12, "crossing");
  r.detail << "refused " << refused << "/" << total << " adversarial products; t* = " << std::setprecision(15)
           << e.crossing.value_or(NAN) << " vs closed form " << root << " (|err| " << sci(err) << ")";
  return r;
}

Result determinism() {
  Result r;
  const std::vector<std::vector<std::string>> commands = {
      {"golden"},
      {"golden", "--json"},
      {"mono", "square", "--notion", "all"},
      {"mono", "det-identity", "--notion", "all"},
      {"mono", "log", "--notion", "h", "--n", "3"},
      {"tsts", "--model", R"({"model":"tsts"})"},
      {"tsts", "--model", R"({"model":"hencky"})"},
      {"tsts", "--model", fixture("exp_hencky_elastic.json"), "--domain", "elastic"},
      {"path"},
      {"trace", "cauchy", "--model", R"({"model":"hencky"})", "--from", "[[0,0,0],[0,0,0],[0,0,0]]", "--to",
       "[[1,0,0],[0,1,0],[0,0,1]]"},
  };
  int same = 0;
  for (const auto& c : commands) {
    std::ostringstream o1, o2, err;
    const int c1 = run_cli(c, o1, err);
    const int c2 = run_cli(c, o2, err);
    const bool ok = c1 == c2 && o1.str() == o2.str() && !o1.str().empty();
    if (ok) ++same;
    r.require(ok, c.front() + " output differs");
  }
  r.detail << same << "/" << commands.size() << " commands byte-identical across two runs";
  return r;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  int passed = 0;
  auto report = [&](int id, const char* title, const Result& r) {
    std::cout << "criterion " << id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << title << " -- "
              << r.detail.str() << '\n';
    if (r.pass) ++passed;
  };

  report(1, "golden values", golden_values());
  report(2, "self-adjointness", self_adjointness());
  report(3, "integral vs divided differences", integral_vs_divided());
  report(4, "potentials", potentials());
  report(5, "monotonicity patterns", patterns());
  const auto el = elasticity();
  report(6, "elasticity", el.main);
  std::cout << "  info: " << el.info << '\n';
  report(7, "eigenvalue and isotropy identities", spectral_identities());
  report(8, "jogcalc", jogcalc());
  report(9, "determinism", determinism());

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << passed << "/9 criteria passed in " << std::fixed << std::setprecision(1) << secs << " s\n";
  return passed == 9 ? 0 : 1;
}
