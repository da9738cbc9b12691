#include "fracspec/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "fracspec/convergence.hpp"
#include "fracspec/io.hpp"
#include "fracspec/operator.hpp"
#include "fracspec/solver.hpp"
#include "fracspec/verify.hpp"

namespace fracspec {
namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

template <typename T>
T parse_scalar(const std::string& s, const std::string& flag) {
  std::istringstream in(s);
  T v{};
  in >> v;
  if (!in || !(in >> std::ws).eof()) throw UsageError(fmt::format("{}: cannot parse '{}'", flag, s));
  return v;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const std::string& flag) {
  std::vector<T> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    out.push_back(parse_scalar<T>(item, flag));
  }
  if (out.empty()) throw UsageError(fmt::format("{}: empty list", flag));
  return out;
}

// Accepts a JSON scalar, array, or comma-separated string and returns its text form.
std::string json_list_text(const nlohmann::json& v) {
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : ",") + json_list_text(e);
    return s;
  }
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return fmt::format("{:.17g}", v.get<double>());
  throw UsageError("config: unsupported value " + v.dump());
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// String-valued options so that the config file can fill whatever was not given.
struct ConvergeArgs {
  std::string method = "pg";
  std::string alphas;
  std::string thetas;
  std::string mu = "1.0";
  std::string rhs = "sin";
  std::string Ns = "16,32,64,128";
  std::string ref_N = "512";
  std::string error;
  std::string quad_points;
  std::string format = "csv";
  std::string out;
  std::string jobs = "1";
  std::string config;
};

int cmd_sigma(const std::string& alphas, const std::string& thetas, std::optional<int> decimals,
              std::ostream& out) {
  const auto as = parse_list<double>(alphas, "--alpha");
  const auto ts = parse_list<double>(thetas, "--theta");
  if (decimals && (*decimals < 0 || *decimals > 17)) throw UsageError("--decimals must be in 0..17");
  out << "alpha theta sigma, sigma_star\n";
  for (double t : ts) {
    for (double a : as) {
      const auto [s, ss] = solve_sigma(a, t);
      if (decimals) {
        out << fmt::format("{:g} {:g} {:.{}f}, {:.{}f}\n", a, t, s, *decimals, ss, *decimals);
      } else {
        out << fmt::format("{:g} {:g} {:.15g}, {:.15g}\n", a, t, s, ss);
      }
    }
  }
  return exit_ok;
}

int cmd_solve(const std::string& method, double alpha, double theta, double mu,
              const std::string& rhs, int N, std::optional<int> quad_points,
              const std::string& out_path, std::ostream& out, std::ostream& err) {
  if (N < 0) throw UsageError("--N must be nonnegative");
  const Method m = parse_method(method);
  const auto p = OperatorParams::make(alpha, theta, mu);
  const RhsSpec f = resolve_rhs(rhs, p);
  const int q = quad_points.value_or(default_quad_points(N));
  AssembledSystem sys = assemble(m, N, p);
  const auto fk = project_rhs(f, N, p, m, q);
  sys.rhs = Eigen::Map<const Eigen::VectorXd>(fk.data(), static_cast<Eigen::Index>(fk.size()));
  const Eigen::VectorXd u = solve_system(sys);
  SpectralSolution sol{p, N, std::vector<double>(u.data(), u.data() + u.size()), m};
  const double residual = relative_residual(sys, u);
  const std::string json = solution_to_json(sol);
  std::ostream& diag = out_path.empty() ? err : out;
  if (out_path.empty()) {
    out << json;
  } else {
    write_file(out_path, json);
    diag << "wrote " << out_path << " (" << sol.coefficients.size() << " coefficients)\n";
  }
  diag << fmt::format("boundary values: u(-1) = {:g}, u(1) = {:g}\n", evaluate(sol, -1.0),
                      evaluate(sol, 1.0));
  diag << fmt::format("relative residual: {:.3e}\n", residual);
  if (!(residual < 1e-10)) {
    err << "error: residual above 1e-10\n";
    return exit_failure;
  }
  return exit_ok;
}

void apply_config(ConvergeArgs& a, const CLI::App& sub) {
  if (a.config.empty()) return;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(a.config));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config: expected a JSON object");
  const auto given = [&](const std::string& flag) { return sub.count(flag) > 0; };
  const auto take = [&](const char* key, std::initializer_list<const char*> flags,
                        std::string& target) {
    if (!j.contains(key)) return;
    for (const char* f : flags) {
      if (given(f)) return;
    }
    target = json_list_text(j.at(key));
  };
  for (const auto& [key, _] : j.items()) {
    static const std::vector<std::string> known{"method", "methods", "alpha", "alphas", "theta",
                                                "thetas", "mu",      "rhs",   "N",      "Ns",
                                                "ref_N",  "error",   "quad_points", "format",
                                                "out",    "jobs"};
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw UsageError("config: unknown key '" + key + "'");
    }
  }
  take("method", {"--method"}, a.method);
  take("methods", {"--method"}, a.method);
  take("alpha", {"--alpha", "--alphas"}, a.alphas);
  take("alphas", {"--alpha", "--alphas"}, a.alphas);
  take("theta", {"--theta", "--thetas"}, a.thetas);
  take("thetas", {"--theta", "--thetas"}, a.thetas);
  take("mu", {"--mu"}, a.mu);
  take("rhs", {"--rhs"}, a.rhs);
  take("N", {"--N", "--Ns"}, a.Ns);
  take("Ns", {"--N", "--Ns"}, a.Ns);
  take("ref_N", {"--ref-N"}, a.ref_N);
  take("error", {"--error"}, a.error);
  take("quad_points", {"--quad-points"}, a.quad_points);
  take("format", {"--format"}, a.format);
  take("out", {"--out"}, a.out);
  take("jobs", {"--jobs"}, a.jobs);
}

int cmd_converge(ConvergeArgs a, const CLI::App& sub, std::ostream& out, std::ostream& err) {
  apply_config(a, sub);
  if (a.alphas.empty()) throw UsageError("converge: --alpha/--alphas is required");
  if (a.thetas.empty()) throw UsageError("converge: --theta/--thetas is required");
  std::vector<Method> methods;
  for (const auto& m : parse_list<std::string>(a.method, "--method")) {
    try {
      methods.push_back(parse_method(m));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  const auto alphas = parse_list<double>(a.alphas, "--alphas");
  const auto thetas = parse_list<double>(a.thetas, "--thetas");
  const double mu = parse_scalar<double>(a.mu, "--mu");
  const auto Ns = parse_list<int>(a.Ns, "--Ns");
  const int ref_N = parse_scalar<int>(a.ref_N, "--ref-N");
  const int jobs = parse_scalar<int>(a.jobs, "--jobs");
  if (jobs < 1) throw UsageError("--jobs must be at least 1");
  std::optional<int> quad;
  if (!a.quad_points.empty()) quad = parse_scalar<int>(a.quad_points, "--quad-points");
  if (a.format != "csv" && a.format != "json" && a.format != "both") {
    throw UsageError("--format must be csv, json or both");
  }
  ErrorMetric metric = default_metric(a.rhs);
  if (!a.error.empty()) {
    try {
      metric = parse_metric(a.error);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  std::vector<StudyConfig> cells;
  for (Method m : methods) {
    for (double t : thetas) {
      for (double al : alphas) {
        StudyConfig c;
        c.method = m;
        c.alpha = al;
        c.theta = t;
        c.mu = mu;
        c.rhs = a.rhs;
        c.Ns = Ns;
        c.ref_N = ref_N;
        c.metric = metric;
        c.quad_points = quad;
        validate(c);
        // Fail fast on bad parameters before any cell is solved.
        resolve_rhs(c.rhs, OperatorParams::make(al, t, mu));
        cells.push_back(std::move(c));
      }
    }
  }

  const auto reports = run_grid(cells, jobs);
  const bool csv = a.format != "json";
  const bool json = a.format != "csv";
  if (a.out.empty()) {
    if (csv) out << reports_to_csv(reports);
    if (json) out << reports_to_json(reports);
  } else {
    const bool has_ext = a.out.ends_with(".csv") || a.out.ends_with(".json");
    const std::string stem = has_ext ? a.out.substr(0, a.out.rfind('.')) : a.out;
    if (csv) write_file(a.format == "csv" && has_ext ? a.out : stem + ".csv", reports_to_csv(reports));
    if (json) {
      write_file(a.format == "json" && has_ext ? a.out : stem + ".json", reports_to_json(reports));
    }
    for (const auto& r : reports) out << format_table(r) << "\n";
  }
  int failures = 0;
  for (const auto& r : reports) {
    if (r.failure) {
      ++failures;
      err << fmt::format("error: {} alpha={} theta={}: {}\n", to_string(r.method), r.alpha,
                         r.theta, *r.failure);
    }
  }
  return failures == 0 ? exit_ok : exit_failure;
}

int cmd_verify(const std::string& filter, double perturbation, std::ostream& out,
               std::ostream& err) {
  const auto results = run_verification({filter, perturbation});
  if (results.empty()) throw UsageError("verify: filter '" + filter + "' matches no check");
  out << fmt::format("{:<11} {:<22} {:>11} {:>10}  {}\n", "group", "check", "deviation",
                     "tolerance", "status");
  bool ok = true;
  for (const auto& r : results) {
    out << fmt::format("{:<11} {:<22} {:>11.3e} {:>10.1e}  {}\n", r.group, r.name, r.value,
                       r.tolerance, r.passed ? "PASS" : "FAIL");
    ok = ok && r.passed;
  }
  if (!ok) {
    err << "failed checks:";
    for (const auto& r : results) {
      if (!r.passed) err << ' ' << r.group << '/' << r.name;
    }
    err << '\n';
  }
  return ok ? exit_ok : exit_failure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral solvers for two-sided fractional diffusion-reaction problems", "fracspec"};
  app.require_subcommand(1);

  auto* sigma = app.add_subcommand("sigma", "Print the singularity exponents (sigma, sigma*)");
  std::string s_alpha;
  std::string s_theta;
  std::optional<int> s_decimals;
  sigma->add_option("--alpha,--alphas", s_alpha, "Order(s) in (1,2), comma separated")->required();
  sigma->add_option("--theta,--thetas", s_theta, "Skewness value(s) in [0,1]")->required();
  sigma->add_option("--decimals", s_decimals, "Fixed decimals instead of 15 significant digits");

  auto* solve_cmd = app.add_subcommand("solve", "Solve once and write the solution record");
  std::string v_method = "pg";
  double v_alpha = 0.0;
  double v_theta = 0.0;
  double v_mu = 1.0;
  std::string v_rhs = "sin";
  int v_N = 0;
  std::optional<int> v_quad;
  std::string v_out;
  solve_cmd->add_option("--method", v_method, "galerkin or pg")->capture_default_str();
  solve_cmd->add_option("--alpha", v_alpha, "Order in (1,2)")->required();
  solve_cmd->add_option("--theta", v_theta, "Skewness in [0,1]")->required();
  solve_cmd->add_option("--mu", v_mu, "Reaction coefficient")->capture_default_str();
  solve_cmd->add_option("--rhs", v_rhs, "Forcing id")->capture_default_str();
  solve_cmd->add_option("--N", v_N, "Polynomial degree")->required();
  solve_cmd->add_option("--quad-points", v_quad, "Rhs quadrature size (default max(2N,128))");
  solve_cmd->add_option("--out", v_out, "Output file (stdout if omitted)");

  auto* conv = app.add_subcommand("converge", "Run convergence studies");
  ConvergeArgs c;
  conv->add_option("--method", c.method, "galerkin, pg, or a comma list")->capture_default_str();
  conv->add_option("--alpha,--alphas", c.alphas, "Order(s), comma separated");
  conv->add_option("--theta,--thetas", c.thetas, "Skewness value(s), comma separated");
  conv->add_option("--mu", c.mu, "Reaction coefficient")->capture_default_str();
  conv->add_option("--rhs", c.rhs, "Forcing id")->capture_default_str();
  conv->add_option("--N,--Ns", c.Ns, "Doubling degrees, comma separated")->capture_default_str();
  conv->add_option("--ref-N", c.ref_N, "Reference degree")->capture_default_str();
  conv->add_option("--error", c.error, "E1 or E2 (default: E2 for boundary-weighted data)");
  conv->add_option("--quad-points", c.quad_points, "Rhs quadrature size override");
  conv->add_option("--format", c.format, "csv, json or both")->capture_default_str();
  conv->add_option("--out", c.out, "Output path stem (stdout if omitted)");
  conv->add_option("--jobs", c.jobs, "Worker threads")->capture_default_str();
  conv->add_option("--config", c.config, "JSON file with the same keys as the flags");

  auto* verify = app.add_subcommand("verify", "Run the built-in verification checks");
  std::string f_filter;
  double f_perturb = 0.0;
  verify->add_option("--filter", f_filter, "Run only checks whose group or name contains this");
  verify->add_option("--perturb-eigenvalue", f_perturb,
                     "Relative perturbation of lambda_n (fault injection)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_usage;
  }

  try {
    if (*sigma) return cmd_sigma(s_alpha, s_theta, s_decimals, out);
    if (*solve_cmd) {
      return cmd_solve(v_method, v_alpha, v_theta, v_mu, v_rhs, v_N, v_quad, v_out, out, err);
    }
    if (*conv) return cmd_converge(c, *conv, out, err);
    if (*verify) return cmd_verify(f_filter, f_perturb, out, err);
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_failure;
  }
  return exit_usage;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace fracspec
