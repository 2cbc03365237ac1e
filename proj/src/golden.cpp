#include "matmono/golden.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "matmono/elast.hpp"
#include "matmono/jogcalc.hpp"
#include "matmono/primfn.hpp"
#include "matmono/rng.hpp"

namespace matmono {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

void path_rows(std::vector<CatalogEntry>& out) {
  const auto e = run_path_experiment(11);
  for (const auto& r : e.records) out.push_back({"det-AB t=" + fmt(r.t), 0.125, r.det_ab});
  out.push_back({"det-sym-AB t=1 closed form", -0.125, e.records.back().det_sym_ab});
  out.push_back({"path crossing t*", std::sqrt(0.5), e.crossing.value_or(NAN), 1e-12});
}

void derivative_rows(std::vector<CatalogEntry>& out) {
  const std::vector<double> zero_entry{0.0, 2.0, 5.0};
  out.push_back({"det-derivative diag(0,2,5).1 formula", 10.0, det_derivative_identity_direction(zero_entry)});
  out.push_back({"det-derivative diag(0,2,5).1 central-difference", 10.0,
                 det_directional_difference(SymMatrix::diagonal(zero_entry).general(), GeneralMatrix::identity(3),
                                            1e-5),
                 1e-6});

  // tr cof(diag(1,2,4) - 1) = (2-1)(4-1)
  const std::vector<double> shifted{0.0, 1.0, 3.0};
  out.push_back({"cofactor-trace diag(1,2,4) lambda=1", 3.0, trace(cof(SymMatrix::diagonal(shifted)))});

  for (const char* name : {"exp", "log", "square", "cube", "id", "cubic-mono"}) {
    const auto& fn = builtin_function(name);
    const auto op = frechet(fn, SymMatrix::identity(3));
    const auto ref = fn.df(1.0) * SymOperator::identity(3);
    out.push_back({std::string("D") + name + "[1] - f'(1) id", 0.0, (op - ref).matrix().frobenius_norm(), 1e-12});
  }

  const auto a = SymMatrix(GeneralMatrix::from_rows({{2.0, -1.0, 0.5}, {-1.0, 0.3, 0.7}, {0.5, 0.7, -1.2}}));
  const auto h = SymMatrix(GeneralMatrix::from_rows({{0.4, 1.0, -0.2}, {1.0, -0.6, 0.3}, {-0.2, 0.3, 0.9}}));
  const auto d = frechet(builtin_function("square"), a).apply(h);
  out.push_back({"Dsquare[A].H - (AH + HA)", 0.0, (d - sym(a * h + h * a)).frobenius_norm(), 1e-12});

  const auto dd = frechet(builtin_function("exp"), a);
  out.push_back({"Dexp quadrature - divided differences", 0.0,
                 (frechet_exp_integral(a) - dd).matrix().frobenius_norm() / dd.matrix().frobenius_norm(), 1e-8});
}

void potential_rows(std::vector<CatalogEntry>& out) {
  const auto& e = builtin_function("exp");
  const std::vector<double> diag{0.5, 1.0, -0.3};
  out.push_back({"additive potential exp diag(0.5,1,-0.3)", std::exp(0.5) + std::exp(1.0) + std::exp(-0.3),
                 potential_value(e, SymMatrix::diagonal(diag))});

  for (const char* name : {"id", "exp"}) {
    const auto& fn = builtin_function(name);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      Rng rng = Rng::stream(kDefaultSeed, static_cast<std::uint64_t>(i));
      const SymMatrix s = random_symmetric(rng, 3, 1.0);
      const double closed = potential_value(fn, s) - 3.0 * fn.antiderivative(0.0);
      worst = std::max(worst, std::abs(pseudo_potential(fn, s) - closed));
    }
    out.push_back({std::string("pseudo-potential ") + name + " max|err| over 20 samples", 0.0, worst, 1e-7});
  }
}

void elastic_rows(std::vector<CatalogEntry>& out) {
  const std::vector<double> l{2.0, -1.0, -1.0};
  out.push_back({"elastic-domain boundary diag(2,-1,-1) sigma_y=3", 1.0,
                 elastic_domain_contains(SymMatrix::diagonal(l), 3.0) ? 1.0 : 0.0});
}

}  // namespace

std::vector<CatalogEntry> golden_table() {
  auto rows = counterexample_catalog();
  path_rows(rows);
  derivative_rows(rows);
  potential_rows(rows);
  elastic_rows(rows);
  return rows;
}

std::string golden_text(const std::vector<CatalogEntry>& rows) {
  std::size_t width = 4;
  for (const auto& r : rows) width = std::max(width, r.name.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(width)) << "name" << "  " << std::setw(24) << "expected"
     << std::setw(24) << "computed" << std::setw(12) << "|err|" << "status\n";
  for (const auto& r : rows) {
    std::ostringstream err;
    err << std::setprecision(3) << std::scientific << r.abs_error();
    os << std::setw(static_cast<int>(width)) << r.name << "  " << std::setprecision(17) << std::setw(24)
       << r.expected << std::setw(24) << r.computed << std::setw(12) << err.str()
       << (r.passed() ? "PASS" : "FAIL") << '\n';
  }
  return os.str();
}

bool all_passed(const std::vector<CatalogEntry>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const CatalogEntry& r) { return r.passed(); });
}

}  // namespace matmono
