#pragma once

// Solution files and convergence reports. Output is deterministic: fixed field
// order and fixed float formatting.

#include <string>
#include <vector>

#include "fracspec/convergence.hpp"
#include "fracspec/solver.hpp"

namespace fracspec {

/// {method, alpha, theta, mu, sigma, sigma_star, N, coefficients}; numbers with 17
/// significant digits so that reloading is bit exact.
std::string solution_to_json(const SpectralSolution& sol);

/// Inverse of solution_to_json. Throws std::invalid_argument on malformed input or when
/// sigma does not solve the exponent equation for (alpha, theta).
SpectralSolution solution_from_json(const std::string& text);

/// Header method,alpha,theta,mu,rhs,N,error_metric,error,rate; one row per N, then
/// summary rows whose N column holds averaged_order or predicted:<space>.
std::string reports_to_csv(const std::vector<ConvergenceReport>& reports);

/// Same content as the CSV at full precision.
std::string reports_to_json(const std::vector<ConvergenceReport>& reports);

/// Human-readable block: errors with 3 significant digits, rates with 2 decimals.
std::string format_table(const ConvergenceReport& report);

}  // namespace fracspec
