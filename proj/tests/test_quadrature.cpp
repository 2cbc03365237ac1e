#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "matmono/errors.hpp"
#include "matmono/quadrature.hpp"

using namespace matmono;

TEST_CASE("Gauss-Legendre on [0,1]") {
  CHECK_THROWS_AS(gauss_legendre_unit(1), PreconditionError);

  for (int order : {2, 3, 8, 17, 32}) {
    const auto rule = gauss_legendre_unit(order);
    double wsum = 0.0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      wsum += w;
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
    for (double x : rule.nodes) {
      CHECK(x > 0.0);
      CHECK(x < 1.0);
    }
    // exact up to degree 2*order - 1
    for (int p = 0; p <= 2 * order - 1; ++p) {
      const double got = integrate_unit(rule, [p](double t) { return std::pow(t, p); });
      CHECK(got == doctest::Approx(1.0 / (p + 1)).epsilon(1e-13));
    }
  }

  const auto rule = gauss_legendre_unit(32);
  CHECK(integrate_unit(rule, [](double t) { return std::exp(3 * t); }) ==
        doctest::Approx((std::exp(3.0) - 1.0) / 3.0).epsilon(1e-15));
}

TEST_CASE("composite rules") {
  const std::vector<double> two{0.0, 0.5, 1.0};
  const auto r = gauss_legendre_composite(4, two);
  CHECK(r.nodes.size() == 8);
  CHECK(integrate_unit(r, [](double t) { return t * t * t * t * t * t * t; }) == doctest::Approx(1.0 / 8.0));

  const std::vector<double> bad{0.0, 0.7, 0.6, 1.0};
  CHECK_THROWS_AS(gauss_legendre_composite(4, bad), PreconditionError);
  const std::vector<double> short_range{0.0, 0.5};
  CHECK_THROWS_AS(gauss_legendre_composite(4, short_range), PreconditionError);

  SUBCASE("graded breaks") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(graded_breaks(inf, inf) == std::vector<double>{0.0, 0.5, 1.0});
    const auto b = graded_breaks(0.01, 1e-3);
    CHECK(b.front() == 0.0);
    CHECK(b.back() == 1.0);
    CHECK(std::is_sorted(b.begin(), b.end()));
    CHECK(b[1] > 0.01);
    CHECK(b[1] <= 0.02);
    CHECK(1.0 - b[b.size() - 2] > 1e-3);
    CHECK(1.0 - b[b.size() - 2] <= 2e-3);
  }

  SUBCASE("pole close to an endpoint") {
    // int_0^1 dt / (1 + eps - t) = log((1 + eps) / eps)
    for (double eps : {1e-2, 1e-4, 1e-6}) {
      const auto f = [eps](double t) { return 1.0 / (1.0 + eps - t); };
      const double exact = std::log((1.0 + eps) / eps);
      const auto graded = gauss_legendre_composite(32, graded_breaks(std::numeric_limits<double>::infinity(), eps));
      // 1 + eps - t loses ~1e-16/eps relative accuracy near t = 1
      CHECK(std::abs(integrate_unit(graded, f) - exact) <= 1e-9 * exact);
      if (eps <= 1e-4) CHECK(std::abs(integrate_unit(gauss_legendre_unit(32), f) - exact) > 1e-6);
    }
  }
}
