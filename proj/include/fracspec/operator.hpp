#pragma once

// Spectral data of the two-sided operator
//   L u = -[theta D_left^alpha u + (1-theta) D_right^alpha u],  1 < alpha < 2,
// whose pseudo-eigenfunctions w^{sigma,sigma*} P_n^{sigma,sigma*} are mapped to
// lambda_n P_n^{sigma*,sigma}.

#include <span>
#include <utility>
#include <vector>

#include "fracspec/special.hpp"

namespace fracspec {

struct OperatorParams {
  double alpha = 1.5;
  double theta = 0.5;
  double mu = 1.0;
  double sigma = 0.75;
  double sigma_star = 0.75;  // always alpha - sigma

  /// Validates alpha in (1,2), theta in [0,1], mu finite, and derives (sigma, sigma*).
  static OperatorParams make(double alpha, double theta, double mu = 1.0);

  /// (sigma, sigma*): exponents of the trial weight and trial polynomials.
  WeightExponents trial() const { return {sigma, sigma_star}; }
  /// (sigma*, sigma): exponents of the image polynomials and the Petrov-Galerkin test space.
  WeightExponents dual() const { return {sigma_star, sigma}; }
};

/// Root of theta (sin(pi s*) + sin(pi s)) - sin(pi s*) = 0 with s* = alpha - s and
/// s in (alpha-1, 1]. theta in {0, 0.5, 1} return closed forms. Throws
/// std::domain_error on invalid ranges and ConvergenceError if 200 safeguarded
/// Newton steps do not reach the tolerance.
std::pair<double, double> solve_sigma(double alpha, double theta);

/// Residual of the exponent equation at (sigma, alpha - sigma).
double sigma_residual(double alpha, double theta, double sigma);

/// lambda_n = -sin(pi alpha) / (sin(pi sigma) + sin(pi sigma*)) Gamma(alpha+n+1)/n!.
/// The prefactor is exactly 1 when theta is 0 or 1.
double eigenvalue(int n, const OperatorParams& p);

/// (1-x)^sigma (1+x)^sigma* P_n^{sigma,sigma*}(x).
double pseudo_eigenfunction(int n, const OperatorParams& p, double x);

/// Which endpoint a shifted power series is centred on.
enum class Endpoint { left, right };

/// Coefficients c_k of P_n^{w}(x) = sum_k c_k t^k with t = 1+x (left) or t = 1-x (right).
/// Each coefficient comes from its closed form, evaluated in long double.
std::vector<double> shifted_power_coefficients(int n, WeightExponents w, Endpoint at);

/// Left Riemann-Liouville derivative of order alpha, taken from -1, of
/// sum_k poly[k] (1+x)^{p+k}, term by term via
///   D (1+x)^q = Gamma(q+1)/Gamma(q+1-alpha) (1+x)^{q-alpha}.
/// A term vanishes when q+1-alpha is a nonpositive integer. Throws
/// std::domain_error if some q = p+k is <= -1.
double rl_left_derivative_oracle(double p_exponent, std::span<const double> poly, double alpha,
                                 double x);

/// Right derivative taken from +1 of sum_k poly[k] (1-x)^{p+k}; mirror of the left rule.
double rl_right_derivative_oracle(double p_exponent, std::span<const double> poly, double alpha,
                                  double x);

/// L applied to the n-th pseudo-eigenfunction through the exact monomial rule.
/// Only theta in {0, 1} admit this single-endpoint form; other theta throw
/// std::invalid_argument.
double apply_operator_oracle(int n, const OperatorParams& p, double x);

/// L applied to the kernel function (1-x)^{sigma-1} (1+x)^{sigma*-1}; theta in {0, 1} only.
double apply_operator_to_kernel_oracle(const OperatorParams& p, double x);

}  // namespace fracspec
