#pragma once

#include <stdexcept>
#include <string>

namespace fracspec {

/// Iterative procedure (root finding, node polishing) did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Linear system could not be factored; usually mu sits on a discrete eigenvalue.
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two solutions that must share (alpha, theta, sigma, sigma*) do not.
class ParameterMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace fracspec
