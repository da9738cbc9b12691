#include "fracspec/operator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fracspec/errors.hpp"

namespace fracspec {
namespace {

constexpr double pi = std::numbers::pi;

void check_ranges(double alpha, double theta) {
  if (!(alpha > 1.0 && alpha < 2.0)) {
    throw std::domain_error("alpha must lie in (1, 2), got " + std::to_string(alpha));
  }
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw std::domain_error("theta must lie in [0, 1], got " + std::to_string(theta));
  }
}

template <typename Real>
Real monomial_sum(Real p_exponent, std::span<const Real> poly, Real alpha, Real t) {
  Real sum = 0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Real q = p_exponent + static_cast<Real>(k);
    if (!(q > -1)) {
      throw std::domain_error("Riemann-Liouville oracle needs every exponent above -1");
    }
    if (poly[k] == 0) continue;
    const Real z = q + 1 - alpha;
    if (z <= 0 && z == std::nearbyint(z)) continue;  // 1/Gamma(z) = 0
    sum += poly[k] * std::tgamma(q + 1) / std::tgamma(z) * std::pow(t, q - alpha);
  }
  return sum;
}

// Coefficients of P_n^{w} in powers of t = 1+x (left) or t = 1-x (right) from
//   P_n^{a,b}(x) = G(a+n+1)/(n! G(a+b+n+1)) sum_m C(n,m) G(a+b+n+m+1)/G(a+m+1) ((x-1)/2)^m
// and its mirror P_n^{a,b}(x) = (-1)^n P_n^{b,a}(-x). Each term is formed independently.
std::vector<long double> shifted_coefficients(int n, WeightExponents w, Endpoint at) {
  // Right: (a,b) = (gamma,beta) and (x-1)/2 = -t/2. Left: the mirror, (a,b) = (beta,gamma).
  const long double a = at == Endpoint::right ? w.gamma : w.beta;
  const long double b = at == Endpoint::right ? w.beta : w.gamma;
  const long double sign_n = (at == Endpoint::left && n % 2 == 1) ? -1.0L : 1.0L;
  const long double ln_front = std::lgamma(a + n + 1) - std::lgamma(static_cast<long double>(n) + 1) -
                               std::lgamma(a + b + n + 1);
  std::vector<long double> c(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) {
    const long double ln_binom = std::lgamma(static_cast<long double>(n) + 1) -
                                 std::lgamma(static_cast<long double>(m) + 1) -
                                 std::lgamma(static_cast<long double>(n - m) + 1);
    const long double ln_term = ln_front + ln_binom + std::lgamma(a + b + n + m + 1) -
                                std::lgamma(a + m + 1) - m * std::log(2.0L);
    const long double sign = (m % 2 == 1) ? -1.0L : 1.0L;
    c[static_cast<std::size_t>(m)] = sign_n * sign * std::exp(ln_term);
  }
  return c;
}

// Multiplies a polynomial in t by (c0 + c1 t).
template <typename Real>
std::vector<Real> times_linear(const std::vector<Real>& a, Real c0, Real c1) {
  std::vector<Real> out(a.size() + 1, Real{0});
  for (std::size_t k = 0; k < a.size(); ++k) {
    out[k] += c0 * a[k];
    out[k + 1] += c1 * a[k];
  }
  return out;
}

}  // namespace

double sigma_residual(double alpha, double theta, double sigma) {
  const double ss = alpha - sigma;
  return theta * (std::sin(pi * ss) + std::sin(pi * sigma)) - std::sin(pi * ss);
}

std::pair<double, double> solve_sigma(double alpha, double theta) {
  check_ranges(alpha, theta);
  if (theta == 1.0) return {1.0, alpha - 1.0};
  if (theta == 0.0) return {alpha - 1.0, 1.0};
  if (theta == 0.5) return {0.5 * alpha, 0.5 * alpha};

  // g is decreasing on [alpha-1, 1]: g(alpha-1) >= 0 >= g(1).
  const auto g = [&](double s) { return sigma_residual(alpha, theta, s); };
  const auto dg = [&](double s) {
    const double ss = alpha - s;
    return pi * (theta * (std::cos(pi * s) - std::cos(pi * ss)) + std::cos(pi * ss));
  };
  double lo = alpha - 1.0;
  double hi = 1.0;
  double s = 0.5 * alpha;
  for (int it = 0; it < 200; ++it) {
    const double gs = g(s);
    if (gs == 0.0) return {s, alpha - s};
    if (gs > 0.0) {
      lo = s;
    } else {
      hi = s;
    }
    const double d = dg(s);
    double next = s - gs / d;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - s);
    s = next;
    if (step <= 1e-16 * std::max(1.0, std::abs(s)) || hi - lo <= 1e-16) {
      if (std::abs(g(s)) < 1e-14) return {s, alpha - s};
    }
  }
  if (std::abs(g(s)) < 1e-14) return {s, alpha - s};
  throw ConvergenceError("solve_sigma: no convergence for alpha=" + std::to_string(alpha) +
                         ", theta=" + std::to_string(theta));
}

OperatorParams OperatorParams::make(double alpha, double theta, double mu) {
  if (!std::isfinite(mu)) throw std::domain_error("mu must be finite");
  const auto [s, ss] = solve_sigma(alpha, theta);
  OperatorParams p;
  p.alpha = alpha;
  p.theta = theta;
  p.mu = mu;
  p.sigma = s;
  p.sigma_star = alpha - s;
  (void)ss;
  return p;
}

double eigenvalue(int n, const OperatorParams& p) {
  if (n < 0) throw std::invalid_argument("eigenvalue: negative index");
  const double ratio = std::exp(ln_gamma(p.alpha + n + 1.0) - ln_gamma(n + 1.0));
  if (p.theta == 0.0 || p.theta == 1.0) return ratio;
  const double prefactor =
      -std::sin(pi * p.alpha) / (std::sin(pi * p.sigma) + std::sin(pi * p.sigma_star));
  return prefactor * ratio;
}

double pseudo_eigenfunction(int n, const OperatorParams& p, double x) {
  return jacobi_weight(p.trial(), x) * jacobi_eval(n, p.trial(), x);
}

std::vector<double> shifted_power_coefficients(int n, WeightExponents w, Endpoint at) {
  if (n < 0) throw std::invalid_argument("shifted_power_coefficients: negative degree");
  const auto c = shifted_coefficients(n, w, at);
  return {c.begin(), c.end()};
}

double rl_left_derivative_oracle(double p_exponent, std::span<const double> poly, double alpha,
                                 double x) {
  return monomial_sum<double>(p_exponent, poly, alpha, 1.0 + x);
}

double rl_right_derivative_oracle(double p_exponent, std::span<const double> poly, double alpha,
                                  double x) {
  return monomial_sum<double>(p_exponent, poly, alpha, 1.0 - x);
}

double apply_operator_oracle(int n, const OperatorParams& p, double x) {
  if (p.theta == 1.0) {
    // (1+x)^{alpha-1} [(1-x) P_n^{1,alpha-1}], and 1-x = 2 - t.
    const auto poly = times_linear(shifted_coefficients(n, p.trial(), Endpoint::left), 2.0L, -1.0L);
    return static_cast<double>(-monomial_sum<long double>(p.sigma_star, poly, p.alpha, 1.0L + x));
  }
  if (p.theta == 0.0) {
    // (1-x)^{alpha-1} [(1+x) P_n^{alpha-1,1}], and 1+x = 2 - t.
    const auto poly = times_linear(shifted_coefficients(n, p.trial(), Endpoint::right), 2.0L, -1.0L);
    return static_cast<double>(-monomial_sum<long double>(p.sigma, poly, p.alpha, 1.0L - x));
  }
  throw std::invalid_argument("apply_operator_oracle: exact oracle exists only for theta in {0,1}");
}

double apply_operator_to_kernel_oracle(const OperatorParams& p, double x) {
  const std::vector<double> one{1.0};
  if (p.theta == 1.0) return -rl_left_derivative_oracle(p.sigma_star - 1.0, one, p.alpha, x);
  if (p.theta == 0.0) return -rl_right_derivative_oracle(p.sigma - 1.0, one, p.alpha, x);
  throw std::invalid_argument(
      "apply_operator_to_kernel_oracle: exact oracle exists only for theta in {0,1}");
}

}  // namespace fracspec
