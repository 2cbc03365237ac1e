#pragma once

#include <functional>
#include <span>
#include <vector>

namespace matmono {

/// Gauss-Legendre rule mapped to [0, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes by Newton iteration on P_order; exact for polynomials of degree
/// 2*order - 1. Throws PreconditionError for order < 2.
QuadratureRule gauss_legendre_unit(int order);

/// The rule of the given order on each panel [b_k, b_{k+1}], concatenated.
/// `breaks` must increase strictly from 0 to 1 (PreconditionError otherwise).
QuadratureRule gauss_legendre_composite(int order, std::span<const double> breaks);

/// Breakpoints on [0, 1] halving toward an end whose nearest singularity
/// lies at distance d0 (below 0) or d1 (above 1): panels next to the end
/// are no wider than that distance. Pass infinity for a far singularity.
std::vector<double> graded_breaks(double d0, double d1);

/// Integral of f over [0, 1] with the given rule.
template <class F>
auto integrate_unit(const QuadratureRule& rule, F&& f) {
  auto acc = rule.weights[0] * f(rule.nodes[0]);
  for (std::size_t k = 1; k < rule.nodes.size(); ++k) acc += rule.weights[k] * f(rule.nodes[k]);
  return acc;
}

}  // namespace matmono
