#pragma once

// Error metrics against a fine reference solution, empirical rates, and the
// orders predicted by weighted-space regularity for comparison.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fracspec/solver.hpp"

namespace fracspec {

enum class ErrorMetric { E1, E2 };

/// ||u_ref - u_N||_{w^{-2sigma,-2sigma*}}: the plain L2 norm of the coefficient-difference
/// polynomial, evaluated with a Gauss-Legendre rule of ref.N + 1 points.
/// Throws ParameterMismatch unless both share (alpha, theta, mu, sigma, sigma*) and ref.N >= sol.N.
double error_e1(const SpectralSolution& sol, const SpectralSolution& ref);

/// ||u_ref - u_N||_{w^{-sigma,-sigma*}} = sqrt(sum_n d_n^2 h_n^{sigma,sigma*}).
double error_e2(const SpectralSolution& sol, const SpectralSolution& ref);

/// E2 by direct Gauss-Jacobi quadrature of the weighted square; independent of the norm formula.
double error_e2_by_quadrature(const SpectralSolution& sol, const SpectralSolution& ref);

double compute_error(ErrorMetric metric, const SpectralSolution& sol, const SpectralSolution& ref);

/// rate_i = log2(e_{i-1} / e_i); N must double from row to row.
std::vector<double> rates(const std::vector<std::pair<int, double>>& errors);

enum class FunctionSpace { weighted_shifted, weighted };

/// Theory order for data of regularity r. Petrov-Galerkin, and Galerkin at theta = 0.5:
/// min(alpha+1, r) + alpha (weighted-shifted) or min(alpha, r) + alpha (weighted).
/// Galerkin at theta != 0.5: min(alpha+1, r) or min(alpha, r).
double predicted_order(double r, double alpha, double theta, Method method, FunctionSpace space);

std::string to_string(Method m);
std::string to_string(ErrorMetric m);
std::string to_string(FunctionSpace s);
Method parse_method(const std::string& s);
ErrorMetric parse_metric(const std::string& s);

struct StudyConfig {
  Method method = Method::petrov_galerkin;
  double alpha = 1.5;
  double theta = 0.5;
  double mu = 1.0;
  std::string rhs = "sin";
  std::vector<int> Ns{16, 32, 64, 128};
  int ref_N = 512;
  ErrorMetric metric = ErrorMetric::E1;
  std::optional<int> quad_points;
  // Solve the reference with a different scheme (cross-method sanity checks).
  std::optional<Method> reference_method;
};

/// E1 for data without boundary powers, E2 otherwise.
ErrorMetric default_metric(const std::string& rhs_id);

/// Throws std::invalid_argument unless Ns is nonempty and doubling and ref_N >= 2 max(N).
void validate(const StudyConfig& c);

struct ReportRow {
  int N = 0;
  double error = 0.0;
  std::optional<double> rate;
};

struct ConvergenceReport {
  Method method = Method::petrov_galerkin;
  double alpha = 0.0;
  double theta = 0.0;
  double mu = 0.0;
  std::string rhs;
  ErrorMetric metric = ErrorMetric::E1;
  int ref_N = 0;
  std::vector<ReportRow> rows;
  std::optional<double> averaged_order;
  std::vector<std::pair<std::string, double>> predicted_orders;
  std::optional<std::string> failure;  // set when the cell could not be computed
};

/// Memoizes solutions by (method, alpha, theta, mu, rhs, N, quad points). Thread safe.
class SolutionCache {
 public:
  std::shared_ptr<const SpectralSolution> get(Method method, const OperatorParams& p,
                                              const std::string& rhs, int N, int quad_points);
  std::size_t size() const;

 private:
  using Key = std::tuple<int, double, double, double, std::string, int, int>;
  mutable std::mutex mutex_;
  std::map<Key, std::shared_ptr<const SpectralSolution>> solutions_;
};

ConvergenceReport run_study(const StudyConfig& config, SolutionCache* cache = nullptr);

/// Runs every cell on `jobs` worker threads. Output order matches input order; a
/// failing cell yields a report with `failure` set instead of aborting the grid.
std::vector<ConvergenceReport> run_grid(const std::vector<StudyConfig>& cells, int jobs,
                                        SolutionCache* cache = nullptr);

}  // namespace fracspec
