#include "fracspec/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fracspec {

WeightExponents::WeightExponents(double gamma_, double beta_) : gamma(gamma_), beta(beta_) {
  if (!(gamma > -1.0) || !(beta > -1.0)) {
    throw std::domain_error("Jacobi weight exponents must exceed -1 (got " +
                            std::to_string(gamma) + ", " + std::to_string(beta) + ")");
  }
}

double jacobi_weight(WeightExponents w, double x) {
  return std::pow(std::max(0.0, 1.0 - x), w.gamma) * std::pow(std::max(0.0, 1.0 + x), w.beta);
}

double ln_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("ln_gamma requires a positive argument");
  }
  return std::lgamma(x);
}

double gamma_ratio(double a, double b) {
  const double r = std::exp(ln_gamma(a) - ln_gamma(b));
  if (!std::isfinite(r)) {
    throw std::overflow_error("gamma_ratio: Gamma(a)/Gamma(b) exceeds double range");
  }
  return r;
}

void jacobi_eval_all(int n, WeightExponents w, double x, std::span<double> out) {
  if (n < 0) throw std::invalid_argument("jacobi_eval_all: negative degree");
  if (out.size() < static_cast<std::size_t>(n) + 1) {
    throw std::invalid_argument("jacobi_eval_all: output span too short");
  }
  const double g = w.gamma;
  const double b = w.beta;
  const double gb = g + b;
  out[0] = 1.0;
  if (n == 0) return;
  // Closed form for degree one; the generic recurrence is 0/0 at gamma+beta = -1.
  out[1] = 0.5 * ((gb + 2.0) * x + (g - b));
  const double g2b2 = (g - b) * gb;  // g^2 - b^2
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + gb;
    const double a1 = 2.0 * (k + 1) * (k + gb + 1.0) * s;
    const double a2 = (s + 1.0) * g2b2;
    const double a3 = s * (s + 1.0) * (s + 2.0);
    const double a4 = 2.0 * (k + g) * (k + b) * (s + 2.0);
    out[k + 1] = ((a2 + a3 * x) * out[k] - a4 * out[k - 1]) / a1;
  }
}

double jacobi_eval(int n, WeightExponents w, double x) {
  if (n < 0) throw std::invalid_argument("jacobi_eval: negative degree");
  if (n == 0) return 1.0;
  const double g = w.gamma;
  const double b = w.beta;
  const double gb = g + b;
  double prev = 1.0;
  double cur = 0.5 * ((gb + 2.0) * x + (g - b));
  const double g2b2 = (g - b) * gb;
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + gb;
    const double a1 = 2.0 * (k + 1) * (k + gb + 1.0) * s;
    const double a2 = (s + 1.0) * g2b2;
    const double a3 = s * (s + 1.0) * (s + 2.0);
    const double a4 = 2.0 * (k + g) * (k + b) * (s + 2.0);
    const double next = ((a2 + a3 * x) * cur - a4 * prev) / a1;
    prev = cur;
    cur = next;
  }
  return cur;
}

double jacobi_deriv_factor(int n, int l, WeightExponents w) {
  if (l < 1 || n < l) throw std::invalid_argument("jacobi_deriv_factor requires n >= l >= 1");
  const double s = n + w.gamma + w.beta + 1.0;
  if (l == 1) return 0.5 * s;
  return std::ldexp(std::exp(ln_gamma(s + l) - ln_gamma(s)), -l);
}

double jacobi_deriv(int n, WeightExponents w, double x, int l) {
  if (n < 0 || l < 1) throw std::invalid_argument("jacobi_deriv requires n >= 0 and l >= 1");
  if (n < l) return 0.0;
  return jacobi_deriv_factor(n, l, w) * jacobi_eval(n - l, w.shifted(l), x);
}

double jacobi_norm(int n, WeightExponents w) {
  if (n < 0) throw std::invalid_argument("jacobi_norm: negative degree");
  const double g = w.gamma;
  const double b = w.beta;
  const double gb = g + b;
  const double scale = std::pow(2.0, gb + 1.0);
  if (n == 0) {
    // 2^{g+b+1} Gamma(g+1) Gamma(b+1) / Gamma(g+b+2); avoids the 0/0 at g+b = -1.
    return scale * std::exp(ln_gamma(g + 1.0) + ln_gamma(b + 1.0) - ln_gamma(gb + 2.0));
  }
  const double lg = ln_gamma(n + g + 1.0) + ln_gamma(n + b + 1.0) -
                    ln_gamma(n + gb + 1.0) - ln_gamma(n + 1.0);
  return scale / (2.0 * n + gb + 1.0) * std::exp(lg);
}

ConnectionCoefficients connection_coeffs(int n, WeightExponents w) {
  if (n < 0) throw std::invalid_argument("connection_coeffs: negative degree");
  const double g = w.gamma;
  const double b = w.beta;
  const double gb = g + b;
  ConnectionCoefficients out;
  if (n == 0) {
    out.c = 1.0;
    return out;
  }
  const double s = 2.0 * n + gb;
  out.c = (n + gb + 1.0) * (n + gb + 2.0) / ((s + 1.0) * (s + 2.0));
  out.b = (g - b) * (n + gb + 1.0) / (s * (s + 2.0));
  if (n >= 2) out.a = -(n + g) * (n + b) / (s * (s + 1.0));
  return out;
}

DerivativeRelationCoefficients derivative_relation_coeffs(int n, WeightExponents w) {
  if (n < 0) throw std::invalid_argument("derivative_relation_coeffs: negative degree");
  const double g = w.gamma;
  const double b = w.beta;
  const double gb = g + b;
  DerivativeRelationCoefficients out;
  if (n == 0) {
    // 2(g+b+1)/((g+b+1)(g+b+2)) with the common factor cancelled.
    out.c_hat = 2.0 / (gb + 2.0);
    return out;
  }
  const double s = 2.0 * n + gb;
  out.c_hat = 2.0 * (n + gb + 1.0) / ((s + 1.0) * (s + 2.0));
  out.b_hat = 2.0 * (g - b) / (s * (s + 2.0));
  // P'_0 vanishes, so a_hat only matters from n = 2 on.
  if (n >= 2) out.a_hat = -2.0 * (n + g) * (n + b) / ((n + gb) * s * (s + 1.0));
  return out;
}

std::vector<double> xkn_sequence(int n, WeightExponents w, int k_max) {
  if (n < 0 || k_max < n) throw std::invalid_argument("xkn_sequence requires 0 <= n <= k_max");
  std::vector<double> x;
  x.reserve(static_cast<std::size_t>(k_max - n) + 1);
  x.push_back(1.0 / connection_coeffs(n, w).c);
  if (k_max == n) return x;
  const auto next = connection_coeffs(n + 1, w);
  x.push_back(-next.b / next.c * x[0]);
  for (int k = n; k + 2 <= k_max; ++k) {
    const auto cc = connection_coeffs(k + 2, w);
    const double p = -cc.b / cc.c;
    const double q = -cc.a / cc.c;
    const std::size_t i = static_cast<std::size_t>(k - n);
    x.push_back(p * x[i + 1] + q * x[i]);
  }
  return x;
}

}  // namespace fracspec
