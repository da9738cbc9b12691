#include <doctest.h>

#include <stdexcept>

#include <cstring>
#include <json.hpp>

#include "fracspec/io.hpp"

using namespace fracspec;

TEST_CASE("solution files round-trip bit exactly") {
  const auto p = OperatorParams::make(1.4, 0.7, 1.0);
  const auto sol = solve(40, p, resolve_rhs("abs-sin", p), Method::galerkin);
  const std::string text = solution_to_json(sol);
  const auto back = solution_from_json(text);
  CHECK(back.method == Method::galerkin);
  CHECK(back.N == 40);
  CHECK(back.params.alpha == p.alpha);
  CHECK(back.params.theta == p.theta);
  CHECK(back.params.mu == p.mu);
  CHECK(back.params.sigma == p.sigma);
  CHECK(back.params.sigma_star == p.sigma_star);
  REQUIRE(back.coefficients.size() == sol.coefficients.size());
  for (std::size_t i = 0; i < sol.coefficients.size(); ++i) {
    CHECK(std::memcmp(&back.coefficients[i], &sol.coefficients[i], sizeof(double)) == 0);
  }
  CHECK(solution_to_json(back) == text);
}

TEST_CASE("solution file layout") {
  const auto p = OperatorParams::make(1.5, 1.0, 0.0);
  SpectralSolution sol{p, 1, {0.1, 1.0 / 3.0}, Method::petrov_galerkin};
  const std::string text = solution_to_json(sol);
  const char* keys[] = {"\"method\"", "\"alpha\"", "\"theta\"", "\"mu\"", "\"sigma\"",
                        "\"sigma_star\"", "\"N\"", "\"coefficients\""};
  std::size_t last = 0;
  for (const char* k : keys) {
    const auto pos = text.find(k);
    REQUIRE(pos != std::string::npos);
    CHECK(pos >= last);
    last = pos;
  }
  CHECK(text.find("0.33333333333333331") != std::string::npos);
  CHECK(text.find("\"pg\"") != std::string::npos);
}

TEST_CASE("malformed solution files are rejected") {
  CHECK_THROWS_AS(solution_from_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(solution_from_json(R"({"method":"pg"})"), std::invalid_argument);
  CHECK_THROWS_AS(
      solution_from_json(
          R"({"method":"pg","alpha":1.5,"theta":1,"mu":0,"sigma":0.9,"sigma_star":0.6,"N":0,"coefficients":[1]})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      solution_from_json(
          R"({"method":"pg","alpha":1.5,"theta":1,"mu":0,"sigma":1,"sigma_star":0.5,"N":2,"coefficients":[1]})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      solution_from_json(
          R"({"method":"xx","alpha":1.5,"theta":1,"mu":0,"sigma":1,"sigma_star":0.5,"N":0,"coefficients":[1]})"),
      std::invalid_argument);
}

namespace {

ConvergenceReport sample_report() {
  ConvergenceReport r;
  r.method = Method::galerkin;
  r.alpha = 1.2;
  r.theta = 0.7;
  r.mu = 1.0;
  r.rhs = "custom:g=sin,p=0.5";
  r.metric = ErrorMetric::E2;
  r.ref_N = 512;
  r.rows = {{16, 1.234567891e-4, std::nullopt}, {32, 3.0e-5, 2.04}};
  r.averaged_order = 2.04;
  r.predicted_orders = {{"weighted", 1.52}};
  return r;
}

}  // namespace

TEST_CASE("CSV report") {
  const std::string csv = reports_to_csv({sample_report()});
  const std::string expected =
      "method,alpha,theta,mu,rhs,N,error_metric,error,rate\n"
      "galerkin,1.2,0.7,1,\"custom:g=sin,p=0.5\",16,E2,0.000123457,\n"
      "galerkin,1.2,0.7,1,\"custom:g=sin,p=0.5\",32,E2,3e-05,2.04\n"
      "galerkin,1.2,0.7,1,\"custom:g=sin,p=0.5\",averaged_order,E2,,2.04\n"
      "galerkin,1.2,0.7,1,\"custom:g=sin,p=0.5\",predicted:weighted,E2,,1.52\n";
  CHECK(csv == expected);
  auto failed = sample_report();
  failed.failure = "boom";
  CHECK(reports_to_csv({failed}).find(",failed,E2,,") != std::string::npos);
}

TEST_CASE("JSON report mirrors the CSV at full precision") {
  const auto text = reports_to_json({sample_report()});
  const auto j = nlohmann::json::parse(text);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["method"] == "galerkin");
  CHECK(j[0]["rows"][0]["error"].get<double>() == 1.234567891e-4);
  CHECK(j[0]["rows"][0]["rate"].is_null());
  CHECK(j[0]["averaged_order"].get<double>() == 2.04);
  CHECK(j[0]["predicted_orders"][0]["label"] == "weighted");
  CHECK(j[0]["ref_N"] == 512);
  CHECK(reports_to_json({sample_report()}) == text);
}

TEST_CASE("table formatting") {
  const auto t = format_table(sample_report());
  CHECK(t.find("1.23e-04") != std::string::npos);
  CHECK(t.find("2.04") != std::string::npos);
  CHECK(t.find("averaged order") != std::string::npos);
}
