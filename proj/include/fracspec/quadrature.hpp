#pragma once

#include <concepts>
#include <cstddef>
#include <memory>
#include <vector>

#include "fracspec/special.hpp"

namespace fracspec {

/// Gauss-Jacobi rule: sum_j weights[j] f(nodes[j]) ~ int_{-1}^{1} f(x) w^{gamma,beta}(x) dx.
/// Nodes are strictly increasing in (-1, 1); weights are positive and sum to h_0.
struct QuadratureRule {
  WeightExponents exponents;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t points() const { return nodes.size(); }
};

/// Builds the `points`-node rule for w. Nodes are the eigenvalues of the Jacobi
/// recurrence matrix, polished by Newton on P_points; weights use the closed-form
/// Christoffel expression. Throws ConvergenceError if a node misses 1e-14.
QuadratureRule gauss_jacobi(int points, WeightExponents w);

/// Process-wide memoized gauss_jacobi, keyed by (points, gamma, beta) rounded to
/// 15 significant digits. Safe for concurrent use.
std::shared_ptr<const QuadratureRule> cached_gauss_jacobi(int points, WeightExponents w);

/// Number of rules currently held by the cache.
std::size_t quadrature_cache_size();

template <std::invocable<double> F>
double integrate(const QuadratureRule& rule, F&& f) {
  double sum = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    sum += rule.weights[j] * static_cast<double>(f(rule.nodes[j]));
  }
  return sum;
}

}  // namespace fracspec
