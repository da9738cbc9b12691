#include "fracspec/solver.hpp"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

#include "fracspec/errors.hpp"
#include "fracspec/quadrature.hpp"

namespace fracspec {
namespace {

// V(j, k) = P_k^{w}(x_j) for k = 0..N.
DenseMatrix vandermonde(const QuadratureRule& rule, int N, WeightExponents w) {
  DenseMatrix v(static_cast<Eigen::Index>(rule.points()), N + 1);
  for (std::size_t j = 0; j < rule.points(); ++j) {
    jacobi_eval_all(N, w, rule.nodes[j], std::span<double>(v.row(static_cast<Eigen::Index>(j)).data(),
                                                             static_cast<std::size_t>(N) + 1));
  }
  return v;
}

// G(k, n) = sum_j w_j P_k^{test}(x_j) P_n^{trial}(x_j).
DenseMatrix gram(const QuadratureRule& rule, int N, WeightExponents test, WeightExponents trial) {
  const DenseMatrix vt = vandermonde(rule, N, test);
  const Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(),
                                            static_cast<Eigen::Index>(rule.weights.size()));
  if (test == trial) {
    DenseMatrix g = vt.transpose() * w.asDiagonal() * vt;
    return 0.5 * (g + g.transpose());
  }
  const DenseMatrix vn = vandermonde(rule, N, trial);
  return vt.transpose() * w.asDiagonal() * vn;
}

void check_degree(int N) {
  if (N < 0) throw std::invalid_argument("assemble: N must be nonnegative");
}

}  // namespace

DenseMatrix AssembledSystem::system_matrix() const {
  DenseMatrix a = mu * mass;
  if (structure == Structure::stiffness_diagonal) {
    a.diagonal() += stiffness_diagonal;
  } else {
    a += stiffness;
  }
  return a;
}

AssembledSystem assemble_galerkin(int N, const OperatorParams& p) {
  check_degree(N);
  AssembledSystem sys;
  sys.method = Method::galerkin;
  sys.structure = Structure::dense;
  sys.mu = p.mu;
  const auto mixed = cached_gauss_jacobi(N + 1, p.trial());
  sys.stiffness = gram(*mixed, N, p.trial(), p.dual());
  for (int k = 0; k <= N; ++k) sys.stiffness.row(k) *= eigenvalue(k, p);
  const auto doubled = cached_gauss_jacobi(N + 1, {2.0 * p.sigma, 2.0 * p.sigma_star});
  sys.mass = gram(*doubled, N, p.trial(), p.trial());
  return sys;
}

AssembledSystem assemble_petrov_galerkin(int N, const OperatorParams& p) {
  check_degree(N);
  AssembledSystem sys;
  sys.method = Method::petrov_galerkin;
  sys.structure = Structure::stiffness_diagonal;
  sys.mu = p.mu;
  sys.stiffness_diagonal.resize(N + 1);
  for (int k = 0; k <= N; ++k) {
    sys.stiffness_diagonal[k] = eigenvalue(k, p) * jacobi_norm(k, p.dual());
  }
  const auto rule = cached_gauss_jacobi(N + 1, {p.alpha, p.alpha});
  sys.mass = gram(*rule, N, p.dual(), p.trial());
  return sys;
}

AssembledSystem assemble(Method method, int N, const OperatorParams& p) {
  return method == Method::galerkin ? assemble_galerkin(N, p) : assemble_petrov_galerkin(N, p);
}

double relative_residual(const AssembledSystem& sys, const Eigen::VectorXd& u) {
  const Eigen::VectorXd r = sys.system_matrix() * u - sys.rhs;
  const double scale = sys.rhs.lpNorm<Eigen::Infinity>();
  const double num = r.lpNorm<Eigen::Infinity>();
  return scale > 0.0 ? num / scale : num;
}

Eigen::VectorXd solve_system(const AssembledSystem& sys) {
  const Eigen::Index n = sys.mass.rows();
  if (sys.mass.cols() != n || sys.rhs.size() != n) {
    throw std::invalid_argument("solve_system: system is not square or rhs is unset");
  }
  Eigen::VectorXd u;
  if (sys.structure == Structure::stiffness_diagonal && sys.mu == 0.0) {
    if ((sys.stiffness_diagonal.array() == 0.0).any()) {
      throw SingularMatrixError("solve_system: zero on the stiffness diagonal");
    }
    u = sys.rhs.array() / sys.stiffness_diagonal.array();
  } else {
    const DenseMatrix a = sys.system_matrix();
    const Eigen::PartialPivLU<DenseMatrix> lu(a);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-15)) {
      throw SingularMatrixError(fmt::format(
          "solve_system: matrix is numerically singular (rcond {:.3e}); mu may sit on a "
          "discrete eigenvalue",
          rcond));
    }
    u = lu.solve(sys.rhs);
    u += lu.solve(sys.rhs - a * u);
  }
  if (!u.allFinite()) throw SingularMatrixError("solve_system: non-finite solution");
  return u;
}

SpectralSolution solve(int N, const OperatorParams& p, const RhsSpec& f, Method method,
                       std::optional<int> quad_points) {
  AssembledSystem sys = assemble(method, N, p);
  const auto fk = project_rhs(f, N, p, method, quad_points.value_or(default_quad_points(N)));
  sys.rhs = Eigen::Map<const Eigen::VectorXd>(fk.data(), static_cast<Eigen::Index>(fk.size()));
  const Eigen::VectorXd u = solve_system(sys);
  SpectralSolution sol;
  sol.params = p;
  sol.N = N;
  sol.method = method;
  sol.coefficients.assign(u.data(), u.data() + u.size());
  return sol;
}

double evaluate(const SpectralSolution& sol, double x) {
  if (x <= -1.0 || x >= 1.0) return 0.0;
  const WeightExponents w = sol.params.trial();
  std::vector<double> poly(sol.coefficients.size());
  if (poly.empty()) return 0.0;
  jacobi_eval_all(static_cast<int>(poly.size()) - 1, w, x, poly);
  double sum = 0.0;
  for (std::size_t n = 0; n < poly.size(); ++n) sum += sol.coefficients[n] * poly[n];
  return jacobi_weight(w, x) * sum;
}

}  // namespace fracspec
