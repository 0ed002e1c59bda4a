#include <cmath>

#include "diracgauge/metric.hpp"

namespace diracgauge::chart {

namespace {

using expr::parse;

MetricField diagonal_metric(const std::string& g00, const std::string& g11,
                            const std::string& g22, const std::string& g33,
                            const expr::Params& params, const std::string& name) {
  const expr::Expr zero = expr::Expr::literal(0.0);
  return MetricField::from_components(
      {parse(g00), zero, zero, zero, parse(g11), zero, zero, parse(g22), zero, parse(g33)},
      params, name);
}

expr::Params merged(const CatalogEntry& entry, const expr::Params& given) {
  expr::Params out = entry.defaults;
  for (const auto& [key, value] : given) out[key] = value;
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"minkowski", "flat metric diag(1,-1,-1,-1) in Cartesian coordinates", {}, {},
       "all of R^4"},
      {"flrw_flat",
       "spatially flat FLRW: diag(1, -a^2, -a^2, -a^2) with a = scale_factor(x0); extra "
       "numeric parameters are bound inside scale_factor",
       {},
       {{"scale_factor", "1 + 0.1*x0"}},
       "a(x0) != 0"},
      {"schwarzschild_isotropic",
       "Schwarzschild in isotropic Cartesian coordinates: f = ((1-m/2r)/(1+m/2r))^2, "
       "h = (1+m/2r)^4, r = |x|",
       {{"m", 1.0}},
       {},
       "r > m/2"},
      {"schwarzschild_standard",
       "Schwarzschild in standard coordinates (x1,x2,x3) = (r,theta,phi): "
       "diag(1-2m/r, -1/(1-2m/r), -r^2, -r^2 sin^2 theta)",
       {{"m", 1.0}},
       {},
       "r > 2m, 0 < theta < pi"},
      {"rotating_frame_minkowski",
       "Minkowski seen from a frame rotating at angular velocity omega about x3: "
       "g00 = 1 - omega^2 (x1^2+x2^2), g01 = omega x2, g02 = -omega x1",
       {{"omega", 0.1}},
       {},
       "omega^2 (x1^2 + x2^2) < 1"},
  };
  return entries;
}

MetricField catalog_metric(const std::string& name, const expr::Params& params,
                           const std::map<std::string, std::string>& expressions) {
  const CatalogEntry* entry = nullptr;
  for (const auto& e : catalog())
    if (e.name == name) entry = &e;
  if (!entry) throw InvalidArgument("unknown catalog metric '" + name + "'");
  for (const auto& [key, _] : expressions)
    if (!entry->expression_defaults.count(key))
      throw InvalidArgument("metric '" + name + "' has no expression parameter '" + key + "'");
  if (entry->expression_defaults.empty())
    for (const auto& [key, _] : params)
      if (!entry->defaults.count(key))
        throw InvalidArgument("metric '" + name + "' has no parameter '" + key + "'");
  const expr::Params p = merged(*entry, params);

  if (name == "minkowski") {
    return diagonal_metric("1", "-1", "-1", "-1", p, name);
  }
  if (name == "flrw_flat") {
    auto it = expressions.find("scale_factor");
    const std::string a =
        it != expressions.end() ? it->second : entry->expression_defaults.at("scale_factor");
    const std::string h = "-(" + a + ")^2";
    auto a_expr = parse(a).bind(p);
    return diagonal_metric("1", h, h, h, p, name)
        .with_domain(
            [a_expr](const Vec4& X) { return expr::eval(a_expr, X) != 0.0; },
            entry->domain);
  }
  if (name == "schwarzschild_isotropic") {
    const std::string r = "sqrt(x1^2 + x2^2 + x3^2)";
    const std::string q = "(m/(2*" + r + "))";
    const std::string f = "((1 - " + q + ")/(1 + " + q + "))^2";
    const std::string h = "-(1 + " + q + ")^4";
    const double m = p.at("m");
    return diagonal_metric(f, h, h, h, p, name)
        .with_domain(
            [m](const Vec4& X) { return X.tail<3>().norm() > 0.5 * m; }, entry->domain);
  }
  if (name == "schwarzschild_standard") {
    const double m = p.at("m");
    return diagonal_metric("1 - 2*m/x1", "-1/(1 - 2*m/x1)", "-x1^2", "-x1^2*sin(x2)^2", p,
                           name)
        .with_domain(
            [m](const Vec4& X) { return X[1] > 2.0 * m && X[2] > 0.0 && X[2] < M_PI; },
            entry->domain);
  }
  if (name == "rotating_frame_minkowski") {
    const double omega = p.at("omega");
    const expr::Expr zero = expr::Expr::literal(0.0);
    const expr::Expr minus_one = parse("-1");
    return MetricField::from_components(
               {parse("1 - omega^2*(x1^2 + x2^2)"), parse("omega*x2"), parse("-omega*x1"), zero,
                minus_one, zero, zero, minus_one, zero, minus_one},
               p, name)
        .with_domain(
            [omega](const Vec4& X) {
              return omega * omega * (X[1] * X[1] + X[2] * X[2]) < 1.0;
            },
            entry->domain);
  }
  throw InvalidArgument("unknown catalog metric '" + name + "'");
}

}  // namespace diracgauge::chart
