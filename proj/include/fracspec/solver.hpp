#pragma once

// Spectral Galerkin and Petrov-Galerkin discretizations of L u + mu u = f on (-1, 1)
// with u(-1) = u(1) = 0. Trial functions are phi_n = w^{sigma,sigma*} P_n^{sigma,sigma*}.

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "fracspec/operator.hpp"
#include "fracspec/rhs.hpp"

namespace fracspec {

using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Structure { dense, stiffness_diagonal };

/// (S + mu M) u = rhs. Rows index test functions, columns trial functions.
/// For stiffness_diagonal systems only stiffness_diagonal is populated.
struct AssembledSystem {
  Method method = Method::petrov_galerkin;
  Structure structure = Structure::dense;
  double mu = 0.0;
  DenseMatrix stiffness;
  Eigen::VectorXd stiffness_diagonal;
  DenseMatrix mass;
  Eigen::VectorXd rhs;

  int size() const { return static_cast<int>(mass.rows()); }
  /// S + mu M as a dense matrix.
  DenseMatrix system_matrix() const;
};

/// S_{k,n} = lambda_k (P_n^{sigma*,sigma}, P_k^{sigma,sigma*})_{w^{sigma,sigma*}},
/// M_{k,n} = (P_n^{sigma,sigma*}, P_k^{sigma,sigma*})_{w^{2 sigma, 2 sigma*}}.
/// Both by (N+1)-point Gauss-Jacobi rules, exact for these degrees. rhs is left empty.
AssembledSystem assemble_galerkin(int N, const OperatorParams& p);

/// S_{k,k} = lambda_k h_k^{sigma*,sigma},
/// M_{k,n} = (P_n^{sigma,sigma*}, P_k^{sigma*,sigma})_{w^{alpha,alpha}}. rhs is left empty.
AssembledSystem assemble_petrov_galerkin(int N, const OperatorParams& p);

AssembledSystem assemble(Method method, int N, const OperatorParams& p);

/// Dense LU with partial pivoting plus one step of iterative refinement; the diagonal
/// path is used when the stiffness is diagonal and mu = 0. Throws SingularMatrixError
/// when the matrix is numerically singular or the result is not finite.
Eigen::VectorXd solve_system(const AssembledSystem& sys);

struct SpectralSolution {
  OperatorParams params;
  int N = 0;
  std::vector<double> coefficients;
  Method method = Method::petrov_galerkin;
};

/// assemble, project_rhs, solve_system. quad_points defaults to max(2N, 128).
SpectralSolution solve(int N, const OperatorParams& p, const RhsSpec& f, Method method,
                       std::optional<int> quad_points = std::nullopt);

/// u_N(x); exactly 0 at x = +-1.
double evaluate(const SpectralSolution& sol, double x);

/// ||(S + mu M) u - f||_inf / ||f||_inf (plain ||.||_inf when f = 0).
double relative_residual(const AssembledSystem& sys, const Eigen::VectorXd& u);

}  // namespace fracspec
