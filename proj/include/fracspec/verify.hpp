#pragma once

// Self-checks runnable from the command line: exponent table, the pseudo-eigen
// relation through the exact Riemann-Liouville oracle, quadrature exactness and
// the Jacobi identities.

#include <string>
#include <vector>

namespace fracspec {

struct CheckResult {
  std::string group;  // operator | quadrature | special
  std::string name;
  double value = 0.0;      // worst observed deviation
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyOptions {
  std::string filter;  // substring of group or name; empty runs everything
  // Relative perturbation applied to lambda_n in the pseudo-eigen checks (fault injection).
  double eigenvalue_perturbation = 0.0;
};

std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

/// Published (sigma, sigma*) to 4 decimals for theta in {0.5, 0.7, 1}, alpha in {1.2,..,1.8}.
struct SigmaTableEntry {
  double theta;
  double alpha;
  double sigma;
  double sigma_star;
};
const std::vector<SigmaTableEntry>& published_sigma_table();

/// Worst |L[phi_n](x) - lambda_n (1 + perturbation) P_n^{sigma*,sigma}(x)| over n <= max_degree,
/// alpha in {1.1, .., 1.9} and 50 interior points, using the oracle at theta (0 or 1).
double pseudo_eigen_oracle_deviation(double theta, int max_degree, double perturbation = 0.0);

/// Worst |L[(1-x)^{sigma-1}(1+x)^{sigma*-1}](x)| over the same grid.
double kernel_oracle_deviation(double theta);

}  // namespace fracspec
