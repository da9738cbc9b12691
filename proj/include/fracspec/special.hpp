#pragma once

// Gamma-function helpers and the Jacobi polynomial toolkit.
//
// All routines are pure and thread safe. Gamma-dependent constants go through
// log-gamma differences so that degrees in the thousands do not overflow.

#include <span>
#include <vector>

namespace fracspec {

/// Exponents of the Jacobi weight (1-x)^gamma (1+x)^beta; both must exceed -1.
struct WeightExponents {
  double gamma = 0.0;
  double beta = 0.0;

  constexpr WeightExponents() = default;
  WeightExponents(double gamma_, double beta_);

  /// (beta, gamma): the mirror image under x -> -x.
  WeightExponents swapped() const { return {beta, gamma}; }
  WeightExponents shifted(double by) const { return {gamma + by, beta + by}; }

  friend bool operator==(const WeightExponents&, const WeightExponents&) = default;
};

/// (1-x)^gamma (1+x)^beta. Returns 0 at an endpoint whose exponent is positive.
double jacobi_weight(WeightExponents w, double x);

/// ln Gamma(x) for x > 0; throws std::domain_error otherwise.
double ln_gamma(double x);

/// Gamma(a)/Gamma(b) through log-gamma; throws std::overflow_error if unrepresentable.
double gamma_ratio(double a, double b);

/// P_n^{gamma,beta}(x) by the ascending three-term recurrence.
double jacobi_eval(int n, WeightExponents w, double x);

/// Writes P_0(x)..P_n(x) into out[0..n]; out.size() must be at least n+1.
void jacobi_eval_all(int n, WeightExponents w, double x, std::span<double> out);

/// d_{n,l} = Gamma(n+gamma+beta+l+1) / (2^l Gamma(n+gamma+beta+1)), the factor in
/// d^l/dx^l P_n^{gamma,beta} = d_{n,l} P_{n-l}^{gamma+l,beta+l}. Requires n >= l >= 1.
double jacobi_deriv_factor(int n, int l, WeightExponents w);

/// l-th derivative of P_n^{gamma,beta} at x; zero when n < l.
double jacobi_deriv(int n, WeightExponents w, double x, int l = 1);

/// Squared weighted norm h_n^{gamma,beta} of P_n^{gamma,beta}. Symmetric in
/// (gamma, beta) to the last bit.
double jacobi_norm(int n, WeightExponents w);

/// Coefficients of P_n^{g,b} = a P_{n-2}^{g+1,b+1} + b P_{n-1}^{g+1,b+1} + c P_n^{g+1,b+1}.
/// a_0 = a_1 = b_0 = 0 by convention.
struct ConnectionCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

ConnectionCoefficients connection_coeffs(int n, WeightExponents w);

/// Coefficients of P_n = a_hat P'_{n-1} + b_hat P'_n + c_hat P'_{n+1} (same exponents).
/// Terms multiplying an identically zero derivative are returned as 0.
struct DerivativeRelationCoefficients {
  double a_hat = 0.0;
  double b_hat = 0.0;
  double c_hat = 0.0;
};

DerivativeRelationCoefficients derivative_relation_coeffs(int n, WeightExponents w);

/// X_k^n = (P_k^{g+1,b+1}, P_n^{g,b})_{w^{g,b}} / h_n^{g,b} for k = n..k_max, generated
/// by the three-term recurrence implied by connection_coeffs.
std::vector<double> xkn_sequence(int n, WeightExponents w, int k_max);

}  // namespace fracspec
