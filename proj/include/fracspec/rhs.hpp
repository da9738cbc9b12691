#pragma once

// Forcing terms f(x) = (1-x)^p (1+x)^q g(x) with g bounded and possibly kinked at
// finitely many interior points, and their projection onto a test basis.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fracspec/operator.hpp"

namespace fracspec {

enum class Method { galerkin, petrov_galerkin };

struct RhsSpec {
  std::string id;
  std::function<double(double)> smooth_part;
  double left_exponent = 0.0;   // p, exponent of (1-x)
  double right_exponent = 0.0;  // q, exponent of (1+x)
  std::vector<double> interior_kinks;  // sorted, strictly inside (-1, 1)
  // Regularity index of f in the two weighted scales used for predicted orders.
  // Empty when unknown; +infinity for analytic data.
  std::optional<double> regularity_weighted_shifted;
  std::optional<double> regularity_weighted;

  double operator()(double x) const;
};

/// Registered ids:
///   sin                         f = sin x
///   abs-sin                     f = |sin x|, kink at 0
///   jacobi-weighted:<b>         f = (1-x^2)^b sin x
///   mode:<m>                    f = lambda_m P_m^{sigma*,sigma}, whose solution at mu = 0
///                               is the m-th pseudo-eigenfunction
///   custom:g=<fn>[,p=..][,q=..][,kinks=a;b;..]
///                               fn in sin | cos | exp | poly(c0;c1;..)
/// Throws std::invalid_argument for unknown or malformed ids.
RhsSpec resolve_rhs(const std::string& id, const OperatorParams& params);

/// Test function exponents: (sigma, sigma*) for Galerkin, (sigma*, sigma) for Petrov-Galerkin.
WeightExponents test_exponents(Method method, const OperatorParams& p);

/// Default number of rhs quadrature points: max(2N, 128).
int default_quad_points(int N);

/// f_k = (f, w^{test} P_k^{test}) for k = 0..N with rules of quad_points+1 nodes.
/// Boundary powers of f are folded into the rule exponents; kinks split the
/// interval and each piece uses a mapped rule that keeps its endpoint singularity.
/// Throws std::domain_error if a combined exponent is <= -1.
std::vector<double> project_rhs(const RhsSpec& f, int N, const OperatorParams& p, Method method,
                                int quad_points);

}  // namespace fracspec
