#include <doctest.h>

#include <cmath>
#include <numbers>

#include "matmono/errors.hpp"
#include "matmono/json_io.hpp"
#include "matmono/monocheck.hpp"

using namespace matmono;

namespace {

SampleSpec spec_for(int n, int count = 1000) {
  SampleSpec s;
  s.n = n;
  s.count = count;
  return s;
}

std::string fixture(const char* name) { return std::string(MATMONO_FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_CASE("margins on hand-made pairs") {
  const auto id = builtin_map("id");
  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const auto a = random_symmetric(rng, 3, 1.0);
    const auto b = random_symmetric(rng, 3, 1.0);
    CHECK(hmon_margin(id, a, b) == doctest::Approx(1.0).epsilon(1e-14));
    const auto p = random_pd(rng, 3, 1.0);
    CHECK(omon_margin(id, a, p) == doctest::Approx(eig(p).lambda.front() / p.frobenius_norm()).epsilon(1e-10));
  }

  const auto g = det_identity_map();
  const std::vector<double> da{3, 2};
  const std::vector<double> db{5, 1};
  const auto a = SymMatrix::diagonal(da);
  const auto b = SymMatrix::diagonal(db);
  CHECK(hmon_margin(g, a, b) * (b - a).frobenius_norm() * (b - a).frobenius_norm() == doctest::Approx(-1.0));
  CHECK_THROWS_AS(hmon_margin(g, a, a), PreconditionError);

  SUBCASE("P-mon reduces to the scalar slope on multiples of the identity") {
    for (const char* name : {"exp", "cube", "square", "softplus"}) {
      const auto m = builtin_map(name);
      const auto& f = *m.primary;
      for (double av : {0.5, 1.5}) {
        for (double hv : {0.1, 0.7}) {
          const double margin = pmon_margin(m, av * SymMatrix::identity(3), hv * SymMatrix::identity(3));
          const double ref = 3.0 * hv * (f.f(av + hv) - f.f(av)) / (3.0 * hv * hv);
          CHECK(margin == doctest::Approx(ref).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("sampling checkers") {
  SUBCASE("log on PSym(3) is H-monotone") {
    const auto r = check_hmon(builtin_map("log"), spec_for(3));
    CHECK(r.samples == 1000);
    CHECK(r.violations == 0);
    CHECK(r.worst_margin > 0.0);
  }
  SUBCASE("det-identity is O-monotone on PSym(2)") {
    CHECK(check_omon(det_identity_map(), spec_for(2)).violations == 0);
  }
  SUBCASE("exp on Sym(2) is P-monotone") {
    CHECK(check_pmon(builtin_map("exp"), spec_for(2)).violations == 0);
  }
  SUBCASE("H-monotone maps are P-monotone") {
    for (const char* name : {"exp", "log", "square", "cube", "cubic-mono", "softplus", "id"}) {
      const auto m = builtin_map(name);
      REQUIRE(check_hmon(m, spec_for(3, 300)).passed());
      CHECK(check_pmon(m, spec_for(3, 300)).passed());
    }
  }
  SUBCASE("det-identity violates H-mon and its witnesses replay exactly") {
    const auto g = det_identity_map();
    const auto r = check_hmon(g, spec_for(2));
    CHECK(r.violations > 0);
    CHECK(r.witnesses.size() == 16);
    for (const auto& w : r.witnesses) {
      CHECK(replay_margin(Notion::HMon, g, w) == w.margin);
      CHECK(w.margin < 0.0);
    }
  }
  SUBCASE("identical seeds give identical reports") {
    const auto m = builtin_map("square");
    const auto r1 = dump(to_json(check_omon(m, spec_for(2, 200))));
    const auto r2 = dump(to_json(check_omon(m, spec_for(2, 200))));
    CHECK(r1 == r2);
    auto other = spec_for(2, 200);
    other.seed = 7;
    CHECK(dump(to_json(check_omon(m, other))) != r1);
  }
  SUBCASE("bounded domains resample, then give up") {
    auto m = builtin_map("id");
    m.domain = SampleDomain::spectrum_in({0.0, 0.01});
    auto s = spec_for(2, 5);
    s.max_retries = 1;
    CHECK_THROWS_AS(check_omon(m, s), DomainError);

    m.domain = SampleDomain::spectrum_in({-1.0, 1.0});
    auto h = check_hmon(m, spec_for(3, 50));
    CHECK(h.violations == 0);
    Rng rng(3);
    for (int k = 0; k < 50; ++k) CHECK(m.domain.contains(m.domain.sample(rng, 3, 1.0)));
  }
  SUBCASE("invalid specs") {
    auto s = spec_for(2, 0);
    CHECK_THROWS_AS(check_hmon(builtin_map("id"), s), ConfigError);
    s = spec_for(9);
    CHECK_THROWS_AS(check_hmon(builtin_map("id"), s), ConfigError);
    CHECK_THROWS_AS(builtin_map("sqrt"), ConfigError);
    CHECK_THROWS_AS(check(Notion::SMon, det_identity_map(), spec_for(2)), ConfigError);
  }
}

TEST_CASE("S-mon") {
  CHECK(check_smon(builtin_function("log")).passed());
  CHECK(check_smon(builtin_function("exp")).passed());
  const auto r = check_smon(builtin_function("square"), {0.1, -0.5});
  CHECK(r.violations == 1);
  CHECK(r.witnesses.at(0).a == -0.5);
  CHECK(r.witnesses.at(0).b == 0.1);
  CHECK(!check_smon(builtin_function("square"), smon_grid({-1.0, 1.0}, 101)).passed());

  const auto grid = smon_grid(Interval::positive(), 7);
  CHECK(grid.front() == doctest::Approx(1e-3));
  CHECK(grid.back() == doctest::Approx(1e3));
  // points outside the domain are dropped
  CHECK(check_smon(builtin_function("log"), {-1.0, 0.0, 1.0, 2.0}).samples == 1);
}

TEST_CASE("implication patterns") {
  SUBCASE("built-in suite is consistent with the implication structure") {
    for (const auto& name : builtin_map_names()) {
      const auto p = implication_matrix(builtin_map(name), spec_for(2));
      INFO(name << " " << p.pattern());
      CHECK(p.consistent());
    }
  }
  CHECK(implication_matrix(builtin_map("square"), spec_for(2)).pattern() == "H+ O- S+ P+");
  CHECK(implication_matrix(det_identity_map(), spec_for(2)).pattern() == "H- O+ S. P+");
  CHECK(implication_matrix(builtin_map("log"), spec_for(2)).pattern() == "H+ O+ S+ P+");

  ImplicationPattern bad;
  bad.o = true;
  bad.p = false;
  CHECK(!bad.consistent());
  bad = {};
  bad.h = true;
  bad.s = false;
  CHECK(!bad.consistent());
}

TEST_CASE("O-mon witness for the square map") {
  const auto m = builtin_map("square");
  const auto j = read_json_file(fixture("square_omon_witness.json"));
  const auto w = witness_from_fixture(j);
  CHECK(j.at("map") == "square");
  CHECK(classify(w.a).kind == Definiteness::PositiveDefinite);
  CHECK(classify(w.b_or_h).kind == Definiteness::PositiveDefinite);
  CHECK(replay_margin(Notion::OMon, m, w) == doctest::Approx(w.margin).epsilon(1e-12));
  CHECK(w.margin < 0.0);

  // independent oracle: (A + P)^2 - A^2 = AP + PA + P^2 has a negative eigenvalue
  const SymMatrix d(w.a * w.b_or_h + w.b_or_h * w.a + w.b_or_h * w.b_or_h);
  CHECK(det(d) < 0.0);

  const auto again = find_omon_witness(m, 2, j.at("seed").get<std::uint64_t>());
  REQUIRE(again.has_value());
  CHECK((again->a - w.a).frobenius_norm() <= 1e-12 * w.a.frobenius_norm());
  CHECK((again->b_or_h - w.b_or_h).frobenius_norm() <= 1e-12);

  CHECK(!find_omon_witness(builtin_map("id"), 2, 1, 50, 5).has_value());
}

TEST_CASE("finite-difference operators") {
  Rng rng(4);
  const auto g = det_identity_map();
  for (int k = 0; k < 50; ++k) {
    const auto c = random_pd(rng, 2 + k % 3, 1.0);
    CHECK(fd_operator(g, c, 1e-5).asymmetry() >= 0.1);
  }
  const auto lg = builtin_map("log");
  for (int k = 0; k < 20; ++k) {
    const auto v = random_psym(rng, 3, 0.5);
    const auto op = fd_operator(lg, v, 1e-5);
    CHECK(op.asymmetry() <= 1e-8);
    CHECK((op.matrix() - frechet(*lg.primary, v).matrix()).frobenius_norm() <= 1e-7);
  }
}

TEST_CASE("lambda_min along a segment") {
  const auto& e = builtin_function("exp");
  OperatorField dexp = [&](const SymMatrix& a) { return frechet(e, a); };
  Rng rng(5);
  for (int k = 0; k < 10; ++k) {
    const auto tr = lambda_min_along_curve(dexp, random_symmetric(rng, 2, 2.0), random_symmetric(rng, 2, 2.0), 20);
    CHECK(tr.points.size() == 21);
    for (const auto& p : tr.points) CHECK(p.lambda_min > 0.0);
    CHECK(!tr.sign_change);
  }

  SUBCASE("degenerate segment") {
    const auto a = random_symmetric(rng, 3, 1.0);
    const auto tr = lambda_min_along_curve(dexp, a, a, 5);
    for (const auto& p : tr.points) CHECK(p.lambda_min == tr.points.front().lambda_min);
  }

  SUBCASE("det-identity starts on the boundary and turns negative") {
    const auto g = det_identity_map();
    OperatorField dg = [&](const SymMatrix& c) { return fd_operator(g, c, 1e-4); };
    const std::vector<double> d51{5, 1};
    const auto tr = lambda_min_along_curve(dg, SymMatrix::identity(2), SymMatrix::diagonal(d51), 10);
    CHECK(std::abs(tr.points.front().lambda_min) <= 1e-9);
    for (std::size_t i = 1; i < tr.points.size(); ++i) CHECK(tr.points[i].lambda_min < -1e-3);
    CHECK(!tr.sign_change);
  }

  SUBCASE("Rayleigh quotient of det-identity changes sign") {
    const std::vector<double> a{3, 2};
    const std::vector<double> b{5, 1};
    const auto r = rayleigh_along_curve(det_identity_map(), SymMatrix::diagonal(a), SymMatrix::diagonal(b), 8);
    double integral = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      CHECK(r[i].second == doctest::Approx(1.0 - 4.0 * r[i].first).epsilon(1e-8));
      if (i > 0) integral += 0.5 * (r[i].second + r[i - 1].second) * (r[i].first - r[i - 1].first);
    }
    CHECK(integral == doctest::Approx(-1.0).epsilon(1e-8));

    // the same sign change seen as a lambda_min trace of the scalar field
    OperatorField field = [&](const SymMatrix& c) {
      const double q = rayleigh_along_curve(det_identity_map(), c, c + (SymMatrix::diagonal(b) - SymMatrix::diagonal(a)), 1)
                           .front()
                           .second;
      return q * SymOperator::identity(2);
    };
    const auto tr = lambda_min_along_curve(field, SymMatrix::diagonal(a), SymMatrix::diagonal(b), 8);
    CHECK(tr.sign_change);
    REQUIRE(tr.bracket.has_value());
    CHECK(tr.bracket->first < 0.25);
    CHECK(tr.bracket->second > 0.25);
  }

  SUBCASE("leaving the domain reports the parameter") {
    const auto& lg = builtin_function("log");
    OperatorField dlog = [&](const SymMatrix& v) { return frechet(lg, v); };
    const std::vector<double> end{-1.0, 1.0};
    try {
      lambda_min_along_curve(dlog, SymMatrix::identity(2), SymMatrix::diagonal(end), 4);
      FAIL("expected DomainError");
    } catch (const DomainError& err) {
      REQUIRE(err.parameter().has_value());
      CHECK(*err.parameter() == 0.5);
    }
  }

  CHECK_THROWS_AS(lambda_min_along_curve(dexp, SymMatrix::identity(2), SymMatrix::identity(2), 0), PreconditionError);
}

TEST_CASE("counterexample catalog") {
  const auto rows = counterexample_catalog();
  CHECK(rows.size() >= 18);
  for (const auto& r : rows) {
    INFO(r.name << " expected " << r.expected << " computed " << r.computed);
    CHECK(r.passed());
  }
  CHECK(skew_exp_inner(1.5 * std::numbers::pi) == doctest::Approx(-12.0 * std::numbers::pi).epsilon(1e-14));
  CHECK(dump(to_json(rows)) == dump(to_json(counterexample_catalog())));
}
