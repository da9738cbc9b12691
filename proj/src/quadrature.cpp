#include "fracspec/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

#include "fracspec/errors.hpp"

namespace fracspec {
namespace {

// Diagonal and squared off-diagonal of the symmetric Jacobi matrix for P^{g,b}.
void recurrence_matrix(int m, WeightExponents w, Eigen::VectorXd& diag, Eigen::VectorXd& sub) {
  const double g = w.gamma;
  const double b = w.beta;
  const double gb = g + b;
  diag.resize(m);
  sub.resize(m > 1 ? m - 1 : 0);
  diag[0] = (b - g) / (gb + 2.0);
  for (int k = 1; k < m; ++k) {
    const double s = 2.0 * k + gb;
    diag[k] = (b * b - g * g) / (s * (s + 2.0));
  }
  for (int k = 1; k < m; ++k) {
    const double s = 2.0 * k + gb;
    double b2;
    if (k == 1) {
      // (k+g+b) cancels against (2k+g+b-1) at k = 1.
      b2 = 4.0 * (1.0 + g) * (1.0 + b) / ((s * s) * (s + 1.0));
    } else {
      b2 = 4.0 * k * (k + g) * (k + b) * (k + gb) / ((s * s) * (s + 1.0) * (s - 1.0));
    }
    sub[k - 1] = std::sqrt(b2);
  }
}

// P_m(x) and P_m'(x) from one pass of the recurrence for P^{g,b} and one for P^{g+1,b+1}.
std::pair<double, double> value_and_slope(int m, WeightExponents w, double x) {
  const double p = jacobi_eval(m, w, x);
  const double dp = 0.5 * (m + w.gamma + w.beta + 1.0) * jacobi_eval(m - 1, w.shifted(1.0), x);
  return {p, dp};
}

}  // namespace

QuadratureRule gauss_jacobi(int points, WeightExponents w) {
  if (points < 1) throw std::invalid_argument("gauss_jacobi: need at least one point");
  // Revalidate in case the aggregate was filled field by field.
  w = WeightExponents(w.gamma, w.beta);

  QuadratureRule rule;
  rule.exponents = w;
  rule.nodes.resize(points);
  rule.weights.resize(points);

  if (points == 1) {
    rule.nodes[0] = (w.beta - w.gamma) / (w.gamma + w.beta + 2.0);
    rule.weights[0] = jacobi_norm(0, w);
    return rule;
  }

  Eigen::VectorXd diag;
  Eigen::VectorXd sub;
  recurrence_matrix(points, w, diag, sub);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("gauss_jacobi: tridiagonal eigensolver failed");
  }
  const Eigen::VectorXd& eig = solver.eigenvalues();

  // Christoffel numbers are C / ((1-x^2) P_m'(x)^2). The common constant C is
  // fixed afterwards from the zeroth moment: lgamma at arguments near m loses
  // about m * eps in the log, the moment itself only involves small arguments.

  for (int j = 0; j < points; ++j) {
    double x = eig[j];
    double step = 0.0;
    double slope = 0.0;
    for (int it = 0; it < 8; ++it) {
      const auto [p, dp] = value_and_slope(points, w, x);
      slope = dp;
      step = p / dp;
      x -= step;
      if (std::abs(step) <= 1e-16) break;
    }
    if (!(std::abs(step) < 1e-14) || !(x > -1.0 && x < 1.0)) {
      throw ConvergenceError(
          fmt::format("gauss_jacobi: node {} of {} did not converge (last step {:.3e})", j,
                      points, step));
    }
    slope = value_and_slope(points, w, x).second;
    rule.nodes[j] = x;
    rule.weights[j] = 1.0 / ((1.0 - x) * (1.0 + x) * slope * slope);
  }
  long double total = 0.0L;
  for (double v : rule.weights) total += v;
  const double c = static_cast<double>(jacobi_norm(0, w) / total);
  for (double& v : rule.weights) v *= c;
  for (int j = 1; j < points; ++j) {
    if (!(rule.nodes[j] > rule.nodes[j - 1])) {
      throw ConvergenceError("gauss_jacobi: nodes not strictly increasing");
    }
  }
  return rule;
}

namespace {

double round15(double v) {
  return std::strtod(fmt::format("{:.14e}", v).c_str(), nullptr);
}

using CacheKey = std::tuple<int, double, double>;

struct RuleCache {
  std::shared_mutex mutex;
  std::map<CacheKey, std::shared_ptr<const QuadratureRule>> rules;
};

RuleCache& rule_cache() {
  static RuleCache cache;
  return cache;
}

}  // namespace

std::shared_ptr<const QuadratureRule> cached_gauss_jacobi(int points, WeightExponents w) {
  const CacheKey key{points, round15(w.gamma), round15(w.beta)};
  auto& cache = rule_cache();
  {
    std::shared_lock lock(cache.mutex);
    if (auto it = cache.rules.find(key); it != cache.rules.end()) return it->second;
  }
  auto rule = std::make_shared<const QuadratureRule>(gauss_jacobi(points, w));
  std::unique_lock lock(cache.mutex);
  return cache.rules.try_emplace(key, std::move(rule)).first->second;
}

std::size_t quadrature_cache_size() {
  auto& cache = rule_cache();
  std::shared_lock lock(cache.mutex);
  return cache.rules.size();
}

}  // namespace fracspec
