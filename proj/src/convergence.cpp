#include "fracspec/convergence.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "fracspec/errors.hpp"
#include "fracspec/quadrature.hpp"

namespace fracspec {
namespace {

std::vector<double> difference(const SpectralSolution& sol, const SpectralSolution& ref) {
  const auto& a = sol.params;
  const auto& b = ref.params;
  if (a.alpha != b.alpha || a.theta != b.theta || a.mu != b.mu || a.sigma != b.sigma ||
      a.sigma_star != b.sigma_star) {
    throw ParameterMismatch("error metric: solution and reference have different parameters");
  }
  if (ref.N < sol.N || ref.coefficients.size() < sol.coefficients.size()) {
    throw ParameterMismatch("error metric: reference degree is below the solution degree");
  }
  std::vector<double> d = ref.coefficients;
  for (std::size_t n = 0; n < sol.coefficients.size(); ++n) d[n] -= sol.coefficients[n];
  return d;
}

// sum_j w_j (sum_n d_n P_n^{trial}(x_j))^2 over the given rule.
double weighted_square(const std::vector<double>& d, WeightExponents trial,
                       const QuadratureRule& rule) {
  const int n = static_cast<int>(d.size()) - 1;
  std::vector<double> poly(d.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < rule.points(); ++j) {
    jacobi_eval_all(n, trial, rule.nodes[j], poly);
    const double v = std::inner_product(d.begin(), d.end(), poly.begin(), 0.0);
    sum += rule.weights[j] * v * v;
  }
  return sum;
}

}  // namespace

double error_e1(const SpectralSolution& sol, const SpectralSolution& ref) {
  const auto d = difference(sol, ref);
  const auto rule = cached_gauss_jacobi(ref.N + 1, {0.0, 0.0});
  return std::sqrt(weighted_square(d, ref.params.trial(), *rule));
}

double error_e2(const SpectralSolution& sol, const SpectralSolution& ref) {
  const auto d = difference(sol, ref);
  const WeightExponents w = ref.params.trial();
  double sum = 0.0;
  for (std::size_t n = 0; n < d.size(); ++n) {
    sum += d[n] * d[n] * jacobi_norm(static_cast<int>(n), w);
  }
  return std::sqrt(sum);
}

double error_e2_by_quadrature(const SpectralSolution& sol, const SpectralSolution& ref) {
  const auto d = difference(sol, ref);
  const auto rule = cached_gauss_jacobi(ref.N + 1, ref.params.trial());
  return std::sqrt(weighted_square(d, ref.params.trial(), *rule));
}

double compute_error(ErrorMetric metric, const SpectralSolution& sol, const SpectralSolution& ref) {
  return metric == ErrorMetric::E1 ? error_e1(sol, ref) : error_e2(sol, ref);
}

std::vector<double> rates(const std::vector<std::pair<int, double>>& errors) {
  std::vector<double> out;
  for (std::size_t i = 1; i < errors.size(); ++i) {
    if (errors[i].first != 2 * errors[i - 1].first) {
      throw std::invalid_argument("rates: N must double from one entry to the next");
    }
    out.push_back(std::log2(errors[i - 1].second / errors[i].second));
  }
  return out;
}

double predicted_order(double r, double alpha, double theta, Method method, FunctionSpace space) {
  if (!(r >= 0.0)) throw std::invalid_argument("predicted_order: r must be nonnegative");
  const double cap = space == FunctionSpace::weighted_shifted ? alpha + 1.0 : alpha;
  const double core = std::min(cap, r);
  const bool full = method == Method::petrov_galerkin || theta == 0.5;
  return full ? core + alpha : core;
}

std::string to_string(Method m) { return m == Method::galerkin ? "galerkin" : "pg"; }
std::string to_string(ErrorMetric m) { return m == ErrorMetric::E1 ? "E1" : "E2"; }
std::string to_string(FunctionSpace s) {
  return s == FunctionSpace::weighted_shifted ? "weighted-shifted" : "weighted";
}

Method parse_method(const std::string& s) {
  if (s == "galerkin" || s == "g") return Method::galerkin;
  if (s == "pg" || s == "petrov-galerkin") return Method::petrov_galerkin;
  throw std::invalid_argument("unknown method '" + s + "' (expected galerkin or pg)");
}

ErrorMetric parse_metric(const std::string& s) {
  if (s == "E1" || s == "e1") return ErrorMetric::E1;
  if (s == "E2" || s == "e2") return ErrorMetric::E2;
  throw std::invalid_argument("unknown error metric '" + s + "' (expected E1 or E2)");
}

ErrorMetric default_metric(const std::string& rhs_id) {
  return rhs_id.starts_with("jacobi-weighted:") ? ErrorMetric::E2 : ErrorMetric::E1;
}

void validate(const StudyConfig& c) {
  if (c.Ns.empty()) throw std::invalid_argument("study: N list is empty");
  for (std::size_t i = 0; i < c.Ns.size(); ++i) {
    if (c.Ns[i] < 0) throw std::invalid_argument("study: N must be nonnegative");
    if (i > 0 && c.Ns[i] != 2 * c.Ns[i - 1]) {
      throw std::invalid_argument("study: N list must double from one entry to the next");
    }
  }
  if (c.ref_N < 2 * c.Ns.back()) {
    throw std::invalid_argument(
        fmt::format("study: ref_N ({}) must be at least twice the largest N ({})", c.ref_N,
                    c.Ns.back()));
  }
  if (c.quad_points && *c.quad_points < c.ref_N) {
    throw std::invalid_argument("study: quad_points must be at least ref_N");
  }
}

std::shared_ptr<const SpectralSolution> SolutionCache::get(Method method, const OperatorParams& p,
                                                           const std::string& rhs, int N,
                                                           int quad_points) {
  const Key key{static_cast<int>(method), p.alpha, p.theta, p.mu, rhs, N, quad_points};
  {
    std::lock_guard lock(mutex_);
    if (auto it = solutions_.find(key); it != solutions_.end()) return it->second;
  }
  // Computed outside the lock; a concurrent duplicate is harmless.
  auto sol = std::make_shared<const SpectralSolution>(
      solve(N, p, resolve_rhs(rhs, p), method, quad_points));
  std::lock_guard lock(mutex_);
  return solutions_.try_emplace(key, std::move(sol)).first->second;
}

std::size_t SolutionCache::size() const {
  std::lock_guard lock(mutex_);
  return solutions_.size();
}

ConvergenceReport run_study(const StudyConfig& config, SolutionCache* cache) {
  validate(config);
  SolutionCache local;
  SolutionCache& store = cache ? *cache : local;
  const OperatorParams p = OperatorParams::make(config.alpha, config.theta, config.mu);
  const auto points = [&](int N) { return config.quad_points.value_or(default_quad_points(N)); };

  ConvergenceReport report;
  report.method = config.method;
  report.alpha = config.alpha;
  report.theta = config.theta;
  report.mu = config.mu;
  report.rhs = config.rhs;
  report.metric = config.metric;
  report.ref_N = config.ref_N;

  const Method ref_method = config.reference_method.value_or(config.method);
  const auto ref = store.get(ref_method, p, config.rhs, config.ref_N, points(config.ref_N));
  std::vector<std::pair<int, double>> errors;
  for (int N : config.Ns) {
    const auto sol = store.get(config.method, p, config.rhs, N, points(N));
    errors.emplace_back(N, compute_error(config.metric, *sol, *ref));
  }
  const auto r = rates(errors);
  for (std::size_t i = 0; i < errors.size(); ++i) {
    ReportRow row{errors[i].first, errors[i].second, std::nullopt};
    if (i > 0) row.rate = r[i - 1];
    report.rows.push_back(row);
  }
  if (!r.empty()) report.averaged_order = std::accumulate(r.begin(), r.end(), 0.0) / r.size();

  const RhsSpec f = resolve_rhs(config.rhs, p);
  const auto add = [&](FunctionSpace space, const std::optional<double>& reg) {
    if (!reg) return;
    report.predicted_orders.emplace_back(
        to_string(space), predicted_order(*reg, config.alpha, config.theta, config.method, space));
  };
  add(FunctionSpace::weighted_shifted, f.regularity_weighted_shifted);
  add(FunctionSpace::weighted, f.regularity_weighted);
  return report;
}

std::vector<ConvergenceReport> run_grid(const std::vector<StudyConfig>& cells, int jobs,
                                        SolutionCache* cache) {
  SolutionCache local;
  SolutionCache& store = cache ? *cache : local;
  std::vector<ConvergenceReport> out(cells.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        out[i] = run_study(cells[i], &store);
      } catch (const std::exception& e) {
        ConvergenceReport failed;
        failed.method = cells[i].method;
        failed.alpha = cells[i].alpha;
        failed.theta = cells[i].theta;
        failed.mu = cells[i].mu;
        failed.rhs = cells[i].rhs;
        failed.metric = cells[i].metric;
        failed.ref_N = cells[i].ref_N;
        failed.failure = e.what();
        out[i] = std::move(failed);
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(cells.size())));
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
  }  // joins before out is returned
  return out;
}

}  // namespace fracspec
