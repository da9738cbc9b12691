#include "fracspec/io.hpp"

#include <fmt/format.h>

#include <cmath>
#include <json.hpp>
#include <stdexcept>

namespace fracspec {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string g17(double v) { return fmt::format("{:.17g}", v); }

std::string g6(double v) { return fmt::format("{:.6g}", v); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string solution_to_json(const SpectralSolution& sol) {
  const auto& p = sol.params;
  std::string out = "{\n";
  out += fmt::format("  \"method\": \"{}\",\n", to_string(sol.method));
  out += fmt::format("  \"alpha\": {},\n", g17(p.alpha));
  out += fmt::format("  \"theta\": {},\n", g17(p.theta));
  out += fmt::format("  \"mu\": {},\n", g17(p.mu));
  out += fmt::format("  \"sigma\": {},\n", g17(p.sigma));
  out += fmt::format("  \"sigma_star\": {},\n", g17(p.sigma_star));
  out += fmt::format("  \"N\": {},\n", sol.N);
  out += "  \"coefficients\": [";
  for (std::size_t i = 0; i < sol.coefficients.size(); ++i) {
    out += (i == 0 ? "\n    " : ",\n    ") + g17(sol.coefficients[i]);
  }
  out += sol.coefficients.empty() ? "]\n" : "\n  ]\n";
  out += "}\n";
  return out;
}

SpectralSolution solution_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
    SpectralSolution sol;
    sol.method = parse_method(j.at("method").get<std::string>());
    const double alpha = j.at("alpha").get<double>();
    const double theta = j.at("theta").get<double>();
    const double mu = j.at("mu").get<double>();
    sol.params = OperatorParams::make(alpha, theta, mu);
    const double sigma = j.at("sigma").get<double>();
    if (std::abs(sigma - sol.params.sigma) > 1e-12) {
      throw std::invalid_argument("solution file: sigma inconsistent with alpha and theta");
    }
    sol.params.sigma = sigma;
    sol.params.sigma_star = j.at("sigma_star").get<double>();
    sol.N = j.at("N").get<int>();
    sol.coefficients = j.at("coefficients").get<std::vector<double>>();
    if (sol.N < 0 || sol.coefficients.size() != static_cast<std::size_t>(sol.N) + 1) {
      throw std::invalid_argument("solution file: coefficient count does not match N");
    }
    return sol;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("solution file: ") + e.what());
  }
}

std::string reports_to_csv(const std::vector<ConvergenceReport>& reports) {
  std::string out = "method,alpha,theta,mu,rhs,N,error_metric,error,rate\n";
  for (const auto& r : reports) {
    const std::string prefix = fmt::format("{},{},{},{},{}", to_string(r.method), g6(r.alpha),
                                           g6(r.theta), g6(r.mu), csv_field(r.rhs));
    const std::string metric = to_string(r.metric);
    if (r.failure) {
      out += fmt::format("{},failed,{},,\n", prefix, metric);
      continue;
    }
    for (const auto& row : r.rows) {
      out += fmt::format("{},{},{},{},{}\n", prefix, row.N, metric, g6(row.error),
                         row.rate ? g6(*row.rate) : "");
    }
    if (r.averaged_order) {
      out += fmt::format("{},averaged_order,{},,{}\n", prefix, metric, g6(*r.averaged_order));
    }
    for (const auto& [label, value] : r.predicted_orders) {
      out += fmt::format("{},predicted:{},{},,{}\n", prefix, label, metric, g6(value));
    }
  }
  return out;
}

std::string reports_to_json(const std::vector<ConvergenceReport>& reports) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json j;
    j["method"] = to_string(r.method);
    j["alpha"] = r.alpha;
    j["theta"] = r.theta;
    j["mu"] = r.mu;
    j["rhs"] = r.rhs;
    j["error_metric"] = to_string(r.metric);
    j["ref_N"] = r.ref_N;
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.rows) {
      ordered_json jr;
      jr["N"] = row.N;
      jr["error"] = row.error;
      jr["rate"] = row.rate ? ordered_json(*row.rate) : ordered_json(nullptr);
      rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    j["averaged_order"] = r.averaged_order ? ordered_json(*r.averaged_order) : ordered_json(nullptr);
    ordered_json pred = ordered_json::array();
    for (const auto& [label, value] : r.predicted_orders) {
      pred.push_back(ordered_json{{"label", label}, {"value", value}});
    }
    j["predicted_orders"] = std::move(pred);
    if (r.failure) j["failure"] = *r.failure;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string format_table(const ConvergenceReport& r) {
  std::string out = fmt::format("{} rhs={} alpha={} theta={} mu={} ref_N={}\n", to_string(r.method),
                                r.rhs, r.alpha, r.theta, r.mu, r.ref_N);
  if (r.failure) return out + "  failed: " + *r.failure + "\n";
  out += fmt::format("  {:>6}  {:>10}  {:>6}\n", "N", to_string(r.metric), "rate");
  for (const auto& row : r.rows) {
    out += fmt::format("  {:>6}  {:>10.2e}  {:>6}\n", row.N, row.error,
                       row.rate ? fmt::format("{:.2f}", *row.rate) : "");
  }
  if (r.averaged_order) out += fmt::format("  averaged order      {:.2f}\n", *r.averaged_order);
  for (const auto& [label, value] : r.predicted_orders) {
    out += fmt::format("  predicted ({}) {:.2f}\n", label, value);
  }
  return out;
}

}  // namespace fracspec
