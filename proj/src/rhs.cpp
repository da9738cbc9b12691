#include "fracspec/rhs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string_view>

#include "fracspec/quadrature.hpp"

namespace fracspec {
namespace {

constexpr double infinity = std::numeric_limits<double>::infinity();

double parse_double(std::string_view text, std::string_view what) {
  const std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || !std::isfinite(v)) {
    throw std::invalid_argument("rhs: cannot parse " + std::string(what) + " from '" + s + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::function<double(double)> parse_function(std::string_view g) {
  if (g == "sin") return [](double x) { return std::sin(x); };
  if (g == "cos") return [](double x) { return std::cos(x); };
  if (g == "exp") return [](double x) { return std::exp(x); };
  if (g.starts_with("poly(") && g.ends_with(")")) {
    std::vector<double> c;
    for (auto part : split(g.substr(5, g.size() - 6), ';')) c.push_back(parse_double(part, "poly"));
    return [c](double x) {
      double v = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
      return v;
    };
  }
  throw std::invalid_argument("rhs: unknown function '" + std::string(g) +
                              "' (expected sin, cos, exp or poly(c0;c1;..))");
}

RhsSpec parse_custom(const std::string& id, std::string_view body) {
  RhsSpec spec;
  spec.id = id;
  bool have_g = false;
  // Fields are comma separated, but commas never occur inside poly(...) since it uses ';'.
  for (auto field : split(body, ',')) {
    const auto eq = field.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("rhs: custom field without '=': '" + std::string(field) + "'");
    }
    const auto key = field.substr(0, eq);
    const auto value = field.substr(eq + 1);
    if (key == "g") {
      spec.smooth_part = parse_function(value);
      have_g = true;
    } else if (key == "p") {
      spec.left_exponent = parse_double(value, "p");
    } else if (key == "q") {
      spec.right_exponent = parse_double(value, "q");
    } else if (key == "kinks") {
      if (!value.empty()) {
        for (auto k : split(value, ';')) spec.interior_kinks.push_back(parse_double(k, "kink"));
      }
    } else {
      throw std::invalid_argument("rhs: unknown custom key '" + std::string(key) + "'");
    }
  }
  if (!have_g) throw std::invalid_argument("rhs: custom rhs needs g=<function>");
  if (!(spec.left_exponent > -1.0) || !(spec.right_exponent > -1.0)) {
    throw std::invalid_argument("rhs: boundary exponents must exceed -1");
  }
  std::sort(spec.interior_kinks.begin(), spec.interior_kinks.end());
  for (std::size_t i = 0; i < spec.interior_kinks.size(); ++i) {
    const double k = spec.interior_kinks[i];
    if (!(k > -1.0 && k < 1.0) || (i > 0 && k == spec.interior_kinks[i - 1])) {
      throw std::invalid_argument("rhs: kinks must be distinct points inside (-1, 1)");
    }
  }
  return spec;
}

}  // namespace

double RhsSpec::operator()(double x) const {
  return std::pow(1.0 - x, left_exponent) * std::pow(1.0 + x, right_exponent) * smooth_part(x);
}

RhsSpec resolve_rhs(const std::string& id, const OperatorParams& params) {
  RhsSpec spec;
  spec.id = id;
  if (id == "sin") {
    spec.smooth_part = [](double x) { return std::sin(x); };
    spec.regularity_weighted_shifted = infinity;
    spec.regularity_weighted = infinity;
    return spec;
  }
  if (id == "abs-sin") {
    spec.smooth_part = [](double x) { return std::abs(std::sin(x)); };
    spec.interior_kinks = {0.0};
    spec.regularity_weighted_shifted = 1.5;
    spec.regularity_weighted = 1.5;
    return spec;
  }
  const std::string_view view(id);
  if (view.starts_with("jacobi-weighted:")) {
    const double b = parse_double(view.substr(16), "beta");
    if (!(b > -1.0)) throw std::invalid_argument("rhs: jacobi-weighted exponent must exceed -1");
    spec.smooth_part = [](double x) { return std::sin(x); };
    spec.left_exponent = b;
    spec.right_exponent = b;
    const double m = std::min(params.sigma, params.sigma_star);
    if (m + 2.0 * b >= 0.0) spec.regularity_weighted_shifted = m + 2.0 * b;
    if (m + 2.0 * b + 1.0 >= 0.0) spec.regularity_weighted = m + 2.0 * b + 1.0;
    return spec;
  }
  if (view.starts_with("mode:")) {
    const double mv = parse_double(view.substr(5), "mode index");
    if (mv < 0.0 || mv != std::floor(mv) || mv > 1e6) {
      throw std::invalid_argument("rhs: mode index must be a nonnegative integer");
    }
    const int m = static_cast<int>(mv);
    const double lam = eigenvalue(m, params);
    const WeightExponents dual = params.dual();
    spec.smooth_part = [m, lam, dual](double x) { return lam * jacobi_eval(m, dual, x); };
    spec.regularity_weighted_shifted = infinity;
    spec.regularity_weighted = infinity;
    return spec;
  }
  if (view.starts_with("custom:")) return parse_custom(id, view.substr(7));
  throw std::invalid_argument("rhs: unknown id '" + id +
                              "' (expected sin, abs-sin, jacobi-weighted:<b>, mode:<m> or custom:...)");
}

WeightExponents test_exponents(Method method, const OperatorParams& p) {
  return method == Method::galerkin ? p.trial() : p.dual();
}

int default_quad_points(int N) { return std::max(2 * N, 128); }

std::vector<double> project_rhs(const RhsSpec& f, int N, const OperatorParams& p, Method method,
                                int quad_points) {
  if (N < 0) throw std::invalid_argument("project_rhs: negative N");
  if (quad_points < N) throw std::invalid_argument("project_rhs: quad_points must be >= N");
  const WeightExponents test = test_exponents(method, p);
  const double eL = test.gamma + f.left_exponent;
  const double eR = test.beta + f.right_exponent;
  if (!(eL > -1.0) || !(eR > -1.0)) {
    throw std::domain_error("project_rhs: test exponent plus rhs exponent must exceed -1");
  }
  std::vector<double> fk(static_cast<std::size_t>(N) + 1, 0.0);
  std::vector<double> poly(static_cast<std::size_t>(N) + 1);
  const int points = quad_points + 1;

  // Adds sum_j weight_j * extra(x_j) * g(x_j) * P_k(x_j) for nodes mapped by x(y).
  const auto accumulate = [&](const QuadratureRule& rule, auto map, auto extra) {
    for (std::size_t j = 0; j < rule.points(); ++j) {
      const double x = map(rule.nodes[j]);
      const double wj = rule.weights[j] * extra(x) * f.smooth_part(x);
      if (wj == 0.0) continue;
      jacobi_eval_all(N, test, x, poly);
      for (int k = 0; k <= N; ++k) fk[k] += wj * poly[k];
    }
  };

  if (f.interior_kinks.empty()) {
    const auto rule = cached_gauss_jacobi(points, {eL, eR});
    accumulate(*rule, [](double y) { return y; }, [](double) { return 1.0; });
    return fk;
  }

  std::vector<double> breaks{-1.0};
  breaks.insert(breaks.end(), f.interior_kinks.begin(), f.interior_kinks.end());
  breaks.push_back(1.0);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double l = breaks[i];
    const double r = breaks[i + 1];
    const double h = 0.5 * (r - l);
    const auto map = [l, h](double y) { return l + h * (y + 1.0); };
    if (r == 1.0) {
      // 1-x = h(1-y): the (1-x)^eL factor goes into the rule.
      const auto rule = cached_gauss_jacobi(points, {eL, 0.0});
      const double scale = std::pow(h, eL) * h;
      accumulate(*rule, map, [eR, scale](double x) { return scale * std::pow(1.0 + x, eR); });
    } else if (l == -1.0) {
      // 1+x = h(1+y).
      const auto rule = cached_gauss_jacobi(points, {0.0, eR});
      const double scale = std::pow(h, eR) * h;
      accumulate(*rule, map, [eL, scale](double x) { return scale * std::pow(1.0 - x, eL); });
    } else {
      const auto rule = cached_gauss_jacobi(points, {0.0, 0.0});
      accumulate(*rule, map, [eL, eR, h](double x) {
        return h * std::pow(1.0 - x, eL) * std::pow(1.0 + x, eR);
      });
    }
  }
  return fk;
}

}  // namespace fracspec
