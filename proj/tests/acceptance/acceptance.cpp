// Acceptance gate: one PASS/FAIL line per criterion, reproducing the published
// exponent table and convergence studies at the stated tolerances.

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "fracspec/convergence.hpp"
#include "fracspec/operator.hpp"
#include "fracspec/quadrature.hpp"
#include "fracspec/rhs.hpp"
#include "fracspec/solver.hpp"
#include "fracspec/verify.hpp"

using namespace fracspec;

namespace {

using Clock = std::chrono::steady_clock;

constexpr double alphas[] = {1.2, 1.4, 1.6, 1.8};

struct Published {
  double theta;
  double alpha;
  std::vector<double> errors;  // N = 16, 32, 64, 128; empty when only the average is pinned
  double average;
};

// Petrov-Galerkin, f = sin x, E1 against N = 512.
const std::vector<Published> pg_sin = {
    {0.5, 1.2, {1.29e-04, 1.31e-05, 1.29e-06, 1.25e-07}, 3.34},
    {0.5, 1.4, {1.11e-05, 8.81e-07, 6.71e-08, 4.97e-09}, 3.71},
    {0.5, 1.6, {1.43e-06, 8.82e-08, 5.17e-09, 2.92e-10}, 4.08},
    {0.5, 1.8, {1.78e-07, 8.54e-09, 3.85e-10, 1.66e-11}, 4.46},
    {0.7, 1.2, {3.84e-05, 3.90e-06, 3.80e-07, 3.60e-08}, 3.35},
    {0.7, 1.4, {7.39e-06, 5.82e-07, 4.40e-08, 3.23e-09}, 3.72},
    {0.7, 1.6, {1.24e-06, 7.68e-08, 4.50e-09, 2.54e-10}, 4.07},
    {0.7, 1.8, {1.75e-07, 8.46e-09, 3.83e-10, 1.66e-11}, 4.46},
    {1.0, 1.2, {3.87e-06, 3.94e-07, 3.80e-08, 3.55e-09}, 3.36},
    {1.0, 1.4, {1.99e-06, 1.56e-07, 1.17e-08, 8.56e-10}, 3.73},
    {1.0, 1.6, {7.04e-07, 4.42e-08, 2.61e-09, 1.49e-10}, 4.07},
    {1.0, 1.8, {1.63e-07, 8.14e-09, 3.75e-10, 1.65e-11}, 4.42},
};

// Galerkin, f = sin x.
const std::vector<Published> g_sin = {
    {0.7, 1.2, {}, 2.64}, {0.7, 1.4, {}, 3.69}, {0.7, 1.6, {}, 4.12}, {0.7, 1.8, {}, 4.47},
    {1.0, 1.2, {}, 1.93}, {1.0, 1.4, {}, 2.89}, {1.0, 1.6, {}, 3.85}, {1.0, 1.8, {}, 4.47},
};

// Petrov-Galerkin, f = |sin x|. At theta = 0.7, alpha = 1.8 the printed average
// disagrees with its own rates (3.02, 3.18, 3.26); their mean is used.
const std::vector<Published> pg_abs = {
    {0.5, 1.2, {1.60e-03, 2.70e-04, 4.28e-05, 6.61e-06}, 2.64},
    {0.5, 1.4, {4.88e-04, 7.32e-05, 1.01e-05, 1.35e-06}, 2.83},
    {0.5, 1.6, {2.12e-04, 2.85e-05, 3.48e-06, 4.05e-07}, 3.01},
    {0.5, 1.8, {1.11e-04, 1.36e-05, 1.49e-06, 1.54e-07}, 3.16},
    {0.7, 1.2, {1.43e-03, 2.50e-04, 4.00e-05, 6.11e-06}, 2.62},
    {0.7, 1.4, {5.05e-04, 7.73e-05, 1.08e-05, 1.44e-06}, 2.82},
    {0.7, 1.6, {2.19e-04, 2.98e-05, 3.69e-06, 4.33e-07}, 2.99},
    {0.7, 1.8, {1.12e-04, 1.38e-05, 1.52e-06, 1.58e-07}, (3.02 + 3.18 + 3.26) / 3.0},
    {1.0, 1.2, {9.36e-04, 1.69e-04, 2.81e-05, 4.49e-06}, 2.57},
    {1.0, 1.4, {4.69e-04, 7.52e-05, 1.10e-05, 1.54e-06}, 2.75},
    {1.0, 1.6, {2.32e-04, 3.30e-05, 4.25e-06, 5.20e-07}, 2.93},
    {1.0, 1.8, {1.17e-04, 1.47e-05, 1.66e-06, 1.77e-07}, 3.12},
};

// Galerkin, f = |sin x|.
const std::vector<Published> g_abs = {
    {0.7, 1.2, {1.73e-03, 4.47e-04, 1.06e-04, 2.36e-05}, 2.07},
    {0.7, 1.4, {7.77e-04, 1.40e-04, 2.29e-05, 3.56e-06}, 2.57},
    {0.7, 1.6, {3.53e-04, 5.18e-05, 6.90e-06, 8.73e-07}, 2.89},
    {0.7, 1.8, {1.96e-04, 2.47e-05, 2.80e-06, 3.00e-07}, 3.12},
    {1.0, 1.2, {7.04e-04, 1.82e-04, 5.12e-05, 1.44e-05}, 1.87},
    {1.0, 1.4, {7.44e-04, 1.79e-04, 4.01e-05, 8.46e-06}, 2.15},
    {1.0, 1.6, {4.28e-04, 7.78e-05, 1.30e-05, 2.07e-06}, 2.56},
    {1.0, 1.8, {2.18e-04, 3.03e-05, 3.84e-06, 4.62e-07}, 2.96},
};

// f = (1 - x^2)^beta sin x, E2 against N = 512.
const std::vector<Published> pg_beta_half = {
    {0.5, 1.2, {}, 3.66}, {0.5, 1.4, {}, 3.96}, {0.5, 1.6, {}, 4.26}, {0.5, 1.8, {}, 4.54},
    {0.7, 1.2, {}, 3.40}, {0.7, 1.4, {}, 3.82}, {0.7, 1.6, {}, 4.21}, {0.7, 1.8, {}, 4.53},
    {1.0, 1.2, {}, 3.29}, {1.0, 1.4, {}, 3.68}, {1.0, 1.6, {}, 4.08}, {1.0, 1.8, {}, 4.48},
};
const std::vector<Published> g_beta_half = {
    {0.7, 1.2, {}, 3.48}, {0.7, 1.4, {}, 3.85}, {0.7, 1.6, {}, 4.21}, {0.7, 1.8, {}, 4.52},
    {1.0, 1.2, {}, 3.58}, {1.0, 1.4, {}, 3.74}, {1.0, 1.6, {}, 4.11}, {1.0, 1.8, {}, 4.49},
};
const std::vector<Published> pg_beta_neg = {
    {0.5, 1.2, {}, 1.95}, {0.5, 1.4, {}, 2.23}, {0.5, 1.6, {}, 2.51}, {0.5, 1.8, {}, 2.79},
    {0.7, 1.2, {}, 1.67}, {0.7, 1.4, {}, 2.09}, {0.7, 1.6, {}, 2.46}, {0.7, 1.8, {}, 2.78},
    {1.0, 1.2, {}, 1.55}, {1.0, 1.4, {}, 1.93}, {1.0, 1.6, {}, 2.32}, {1.0, 1.8, {}, 2.73},
};
const std::vector<Published> g_beta_neg = {
    {0.7, 1.2, {}, 1.75}, {0.7, 1.4, {}, 2.14}, {0.7, 1.6, {}, 2.48}, {0.7, 1.8, {}, 2.79},
    {1.0, 1.2, {}, 1.63}, {1.0, 1.4, {}, 2.02}, {1.0, 1.6, {}, 2.39}, {1.0, 1.8, {}, 2.76},
};

int jobs() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

std::vector<ConvergenceReport> run_table(const std::vector<Published>& table, Method method,
                                         const std::string& rhs, ErrorMetric metric,
                                         SolutionCache* cache, int ref_N = 512) {
  std::vector<StudyConfig> cells;
  for (const auto& entry : table) {
    StudyConfig c;
    c.method = method;
    c.alpha = entry.alpha;
    c.theta = entry.theta;
    c.rhs = rhs;
    c.metric = metric;
    c.ref_N = ref_N;
    cells.push_back(c);
  }
  return run_grid(cells, jobs(), cache);
}

// Accumulates sub-check outcomes and prints the details of the failing ones.
struct Gate {
  bool ok = true;
  int checks = 0;
  std::vector<std::string> notes;

  void expect(bool pass, const std::string& what) {
    ++checks;
    if (!pass) {
      ok = false;
      notes.push_back(what);
    }
  }
};

void report(int id, const std::string& title, const Gate& gate, bool& all_ok) {
  fmt::print("CRITERION {}: {} - {} ({} checks)\n", id, gate.ok ? "PASS" : "FAIL", title,
             gate.checks);
  for (const auto& n : gate.notes) fmt::print("    {}\n", n);
  all_ok = all_ok && gate.ok;
}

std::string label(const std::string& what, const Published& p) {
  return fmt::format("{} theta={} alpha={}", what, p.theta, p.alpha);
}

void check_averages(Gate& gate, const std::vector<Published>& table,
                    const std::vector<ConvergenceReport>& reports, double tol,
                    const std::string& what) {
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& r = reports[i];
    if (r.failure) {
      gate.expect(false, label(what, table[i]) + " failed: " + *r.failure);
      continue;
    }
    const double got = r.averaged_order.value_or(NAN);
    gate.expect(std::abs(got - table[i].average) <= tol,
                fmt::format("{}: averaged order {:.3f}, published {:.2f}, tolerance {}",
                            label(what, table[i]), got, table[i].average, tol));
  }
}

// Published errors carry 3 significant digits; `accept` decides whether our/published is close.
void check_errors(Gate& gate, const std::vector<Published>& table,
                  const std::vector<ConvergenceReport>& reports,
                  const std::function<bool(double)>& accept, const std::string& what) {
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& r = reports[i];
    if (r.failure) continue;
    for (std::size_t j = 0; j < table[i].errors.size(); ++j) {
      const double ratio = r.rows[j].error / table[i].errors[j];
      gate.expect(accept(ratio),
                  fmt::format("{} N={}: error {:.3e}, published {:.2e} (ratio {:.3f})",
                              label(what, table[i]), r.rows[j].N, r.rows[j].error,
                              table[i].errors[j], ratio));
    }
  }
}

Gate criterion_sigma_table() {
  Gate gate;
  for (const auto& e : published_sigma_table()) {
    const auto start = Clock::now();
    const auto [s, ss] = solve_sigma(e.alpha, e.theta);
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    gate.expect(std::abs(s - e.sigma) <= 5e-5 && std::abs(ss - e.sigma_star) <= 5e-5,
                fmt::format("theta={} alpha={}: ({:.6f}, {:.6f}) vs ({:.4f}, {:.4f})", e.theta,
                            e.alpha, s, ss, e.sigma, e.sigma_star));
    gate.expect(ms < 1.0, fmt::format("theta={} alpha={}: {:.3f} ms", e.theta, e.alpha, ms));
  }
  return gate;
}

Gate criterion_pg_smooth(SolutionCache& cache, double& seconds) {
  Gate gate;
  const auto start = Clock::now();
  const auto reports = run_table(pg_sin, Method::petrov_galerkin, "sin", ErrorMetric::E1, &cache);
  seconds = std::chrono::duration<double>(Clock::now() - start).count();
  check_errors(gate, pg_sin, reports, [](double r) { return std::abs(r - 1.0) <= 0.05; },
               "PG sin");
  check_averages(gate, pg_sin, reports, 0.05, "PG sin");
  gate.expect(seconds < 120.0, fmt::format("full grid took {:.1f} s", seconds));
  return gate;
}

Gate criterion_g_smooth(SolutionCache& cache) {
  Gate gate;
  const auto reports = run_table(g_sin, Method::galerkin, "sin", ErrorMetric::E1, &cache);
  check_averages(gate, g_sin, reports, 0.1, "Galerkin sin");
  // Where the published orders beat alpha + 1, ours must as well.
  for (std::size_t i = 0; i < g_sin.size(); ++i) {
    if (g_sin[i].average <= g_sin[i].alpha + 1.0 || reports[i].failure) continue;
    const double got = reports[i].averaged_order.value_or(NAN);
    gate.expect(got > g_sin[i].alpha + 1.0,
                fmt::format("{}: order {:.3f} does not exceed alpha+1",
                            label("Galerkin sin", g_sin[i]), got));
  }
  return gate;
}

Gate criterion_kinked(SolutionCache& cache) {
  Gate gate;
  const auto within_two = [](double r) { return r >= 0.5 && r <= 2.0; };
  const auto pg = run_table(pg_abs, Method::petrov_galerkin, "abs-sin", ErrorMetric::E1, &cache);
  check_averages(gate, pg_abs, pg, 0.15, "PG |sin|");
  check_errors(gate, pg_abs, pg, within_two, "PG |sin|");
  const auto g = run_table(g_abs, Method::galerkin, "abs-sin", ErrorMetric::E1, &cache);
  check_averages(gate, g_abs, g, 0.15, "Galerkin |sin|");
  check_errors(gate, g_abs, g, within_two, "Galerkin |sin|");
  return gate;
}

Gate criterion_boundary_weighted(SolutionCache& cache) {
  Gate gate;
  const std::string half = "jacobi-weighted:0.5";
  const std::string neg = "jacobi-weighted:-0.4";
  check_averages(gate, pg_beta_half,
                 run_table(pg_beta_half, Method::petrov_galerkin, half, ErrorMetric::E2, &cache),
                 0.15, "PG beta=0.5");
  check_averages(gate, g_beta_half,
                 run_table(g_beta_half, Method::galerkin, half, ErrorMetric::E2, &cache), 0.15,
                 "Galerkin beta=0.5");
  check_averages(gate, pg_beta_neg,
                 run_table(pg_beta_neg, Method::petrov_galerkin, neg, ErrorMetric::E2, &cache),
                 0.15, "PG beta=-0.4");
  check_averages(gate, g_beta_neg,
                 run_table(g_beta_neg, Method::galerkin, neg, ErrorMetric::E2, &cache), 0.15,
                 "Galerkin beta=-0.4");
  return gate;
}

Gate criterion_oracle() {
  Gate gate;
  for (double theta : {1.0, 0.0}) {
    const double eig = pseudo_eigen_oracle_deviation(theta, 8);
    gate.expect(eig < 1e-9, fmt::format("theta={}: pseudo-eigen deviation {:.3e}", theta, eig));
    const double ker = kernel_oracle_deviation(theta);
    gate.expect(ker < 1e-10, fmt::format("theta={}: kernel deviation {:.3e}", theta, ker));
  }
  return gate;
}

Gate criterion_structure() {
  Gate gate;
  for (double alpha : alphas) {
    const auto p = OperatorParams::make(alpha, 0.5, 1.0);
    for (const std::string rhs : {"sin", "abs-sin", "jacobi-weighted:0.5"}) {
      const auto f = resolve_rhs(rhs, p);
      const auto g = solve(64, p, f, Method::galerkin);
      const auto pg = solve(64, p, f, Method::petrov_galerkin);
      double worst = 0.0;
      for (std::size_t n = 0; n < g.coefficients.size(); ++n) {
        worst = std::max(worst, std::abs(g.coefficients[n] - pg.coefficients[n]));
      }
      gate.expect(worst < 1e-10,
                  fmt::format("alpha={} {}: Galerkin vs PG {:.3e}", alpha, rhs, worst));
    }
  }

  // A modal right-hand side is reproduced exactly by every scheme whose stiffness is the
  // pseudo-eigen diagonal: Petrov-Galerkin, and Galerkin at theta = 0.5. Off the symmetric
  // case the Galerkin stiffness scales row k by lambda_k, so its exactness is not claimed.
  for (Method method : {Method::galerkin, Method::petrov_galerkin}) {
    for (double theta : {0.5, 0.7, 1.0}) {
      if (method == Method::galerkin && theta != 0.5) continue;
      for (double alpha : alphas) {
        const auto p = OperatorParams::make(alpha, theta, 0.0);
        for (int m : {0, 3, 7}) {
          const auto f = resolve_rhs(fmt::format("mode:{}", m), p);
          const auto sol = solve(12, p, f, method);
          double worst = 0.0;
          for (int n = 0; n <= 12; ++n) {
            worst = std::max(worst, std::abs(sol.coefficients[n] - (n == m ? 1.0 : 0.0)));
          }
          gate.expect(worst < 1e-12,
                      fmt::format("{} theta={} alpha={} mode {}: {:.3e}", to_string(method),
                                  theta, alpha, m, worst));
        }
      }
    }
  }

  for (const auto& c : run_verification({"degree-of-exactness", 0.0})) {
    gate.expect(c.passed && c.tolerance <= 1e-11,
                fmt::format("{}: {:.3e} (tolerance {:.0e})", c.name, c.value, c.tolerance));
  }

  for (Method method : {Method::galerkin, Method::petrov_galerkin}) {
    for (double theta : {0.5, 0.7, 1.0}) {
      for (double alpha : alphas) {
        const auto p = OperatorParams::make(alpha, theta, 1.0);
        for (const std::string rhs : {"sin", "abs-sin"}) {
          const auto f = resolve_rhs(rhs, p);
          const auto ref = solve(256, p, f, method);
          for (int N : {16, 64}) {
            const auto sol = solve(N, p, f, method);
            const double e1 = error_e1(sol, ref);
            const double e2 = error_e2(sol, ref);
            const double e2q = error_e2_by_quadrature(sol, ref);
            const auto tag =
                fmt::format("{} theta={} alpha={} {} N={}", to_string(method), theta, alpha, rhs, N);
            gate.expect(std::abs(e2 - e2q) <= 1e-9 * e2,
                        fmt::format("{}: E2 {:.6e} vs quadrature {:.6e}", tag, e2, e2q));
            gate.expect(e2 <= e1, fmt::format("{}: E2 {:.3e} > E1 {:.3e}", tag, e2, e1));
          }
        }
      }
    }
  }
  return gate;
}

Gate criterion_reference_sensitivity(SolutionCache& cache) {
  Gate gate;
  const Published published{1.0, 1.2, {3.56e-04, 9.56e-05, 2.44e-05, 5.36e-06}, NAN};
  const double published_rates[] = {1.90, 1.97, 2.19};
  const auto reports =
      run_table({published}, Method::galerkin, "sin", ErrorMetric::E1, &cache, 256);
  const auto& r = reports.front();
  if (r.failure) {
    gate.expect(false, "study failed: " + *r.failure);
    return gate;
  }
  check_errors(gate, {published}, reports, [](double x) { return std::abs(x - 1.0) <= 0.05; },
               "Galerkin sin ref_N=256");
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    const double got = r.rows[i].rate.value_or(NAN);
    gate.expect(std::abs(got - published_rates[i - 1]) <= 0.1,
                fmt::format("N={}: rate {:.3f}, published {:.2f}", r.rows[i].N, got,
                            published_rates[i - 1]));
  }
  return gate;
}

}  // namespace

int main() {
  bool all_ok = true;
  SolutionCache cache;

  report(1, "exponent table to 4 decimals, < 1 ms per pair", criterion_sigma_table(), all_ok);

  double seconds = 0.0;
  const Gate smooth = criterion_pg_smooth(cache, seconds);
  report(2, fmt::format("smooth data, Petrov-Galerkin errors and orders (grid {:.1f} s)", seconds),
         smooth, all_ok);
  report(3, "smooth data, Galerkin averaged orders", criterion_g_smooth(cache), all_ok);
  report(4, "kinked data, averaged orders and absolute errors", criterion_kinked(cache), all_ok);
  report(5, "boundary-weighted data, E2 averaged orders", criterion_boundary_weighted(cache),
         all_ok);
  report(6, "pseudo-eigen relation against the exact derivative oracle", criterion_oracle(),
         all_ok);
  report(7, "structural properties", criterion_structure(), all_ok);
  report(8, "reference-size sensitivity with N_ref = 256", criterion_reference_sensitivity(cache),
         all_ok);

  fmt::print("{}\n", all_ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all_ok ? 0 : 1;
}
