#include "matmono/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "matmono/errors.hpp"

namespace matmono {

QuadratureRule gauss_legendre_unit(int order) {
  if (order < 2) throw PreconditionError("quadrature order must be at least 2");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1,1] -> [0,1]; x runs from near +1 downward
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(order - 1 - i);
    rule.nodes[lo] = 0.5 * (1.0 - x);
    rule.nodes[hi] = 0.5 * (1.0 + x);
    rule.weights[lo] = 0.5 * w;
    rule.weights[hi] = 0.5 * w;
  }
  return rule;
}

QuadratureRule gauss_legendre_composite(int order, std::span<const double> breaks) {
  if (breaks.size() < 2 || breaks.front() != 0.0 || breaks.back() != 1.0) {
    throw PreconditionError("breakpoints must run from 0 to 1");
  }
  const QuadratureRule base = gauss_legendre_unit(order);
  QuadratureRule rule;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double lo = breaks[p];
    const double width = breaks[p + 1] - lo;
    if (!(width > 0.0)) throw PreconditionError("breakpoints must increase strictly");
    for (std::size_t k = 0; k < base.nodes.size(); ++k) {
      rule.nodes.push_back(lo + width * base.nodes[k]);
      rule.weights.push_back(width * base.weights[k]);
    }
  }
  return rule;
}

std::vector<double> graded_breaks(double d0, double d1) {
  std::vector<double> left;
  for (double x = 0.5; x > d0 && x > 1e-15; x *= 0.5) left.push_back(x);
  std::vector<double> breaks{0.0};
  breaks.insert(breaks.end(), left.rbegin(), left.rend());
  if (left.empty()) breaks.push_back(0.5);
  for (double x = 0.5 * 0.5; x > d1 && x > 1e-15; x *= 0.5) breaks.push_back(1.0 - x);
  breaks.push_back(1.0);
  return breaks;
}

}  // namespace matmono
