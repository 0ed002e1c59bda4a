#include "config.hpp"

#include <random>

namespace diracgauge::cli {

namespace {

constexpr const char* kComponentKeys[10] = {"00", "01", "02", "03", "11",
                                            "12", "13", "22", "23", "33"};

expr::Params parse_params(const Json& node, const std::string& where) {
  if (!node.is_object()) throw ConfigError(where + " must be an object of numbers");
  expr::Params out;
  for (const auto& [key, value] : node.items()) {
    if (!value.is_number()) throw ConfigError(where + "." + key + " must be a number");
    out[key] = value.get<double>();
  }
  return out;
}

template <int N>
Eigen::Matrix<double, N, 1> parse_vector(const Json& node, const std::string& where) {
  if (!node.is_array() || node.size() != N)
    throw ConfigError(where + " must be an array of " + std::to_string(N) + " numbers");
  Eigen::Matrix<double, N, 1> v;
  for (int i = 0; i < N; ++i) {
    if (!node[i].is_number()) throw ConfigError(where + " must contain numbers");
    v[i] = node[i].get<double>();
  }
  return v;
}

template <int N>
Eigen::Matrix<double, N, N> parse_matrix(const Json& node, const std::string& where) {
  if (!node.is_array() || node.size() != N)
    throw ConfigError(where + " must be a " + std::to_string(N) + "x" + std::to_string(N) +
                      " array");
  Eigen::Matrix<double, N, N> m;
  for (int r = 0; r < N; ++r) m.row(r) = parse_vector<N>(node[r], where).transpose();
  return m;
}

std::array<expr::Expr, 3> parse_triple(const Json& node, const std::string& where) {
  if (!node.is_array() || node.size() != 3)
    throw ConfigError(where + " must be an array of 3 expressions");
  std::array<expr::Expr, 3> out;
  for (int i = 0; i < 3; ++i) {
    if (!node[i].is_string()) throw ConfigError(where + " must contain strings");
    out[i] = expr::parse(node[i].get<std::string>());
  }
  return out;
}

}  // namespace

void check_keys(const Json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

double get_number(const Json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + " is missing '" + key + "'");
  if (!obj[key].is_number()) throw ConfigError(where + "." + key + " must be a number");
  return obj[key].get<double>();
}

double get_number_or(const Json& obj, const char* key, double fallback,
                     const std::string& where) {
  return obj.contains(key) ? get_number(obj, key, where) : fallback;
}

std::string get_string_or(const Json& obj, const char* key, const std::string& fallback,
                          const std::string& where) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) throw ConfigError(where + "." + key + " must be a string");
  return obj[key].get<std::string>();
}

Json Tolerances::to_json() const {
  return Json{{"cholesky", cholesky},
              {"lorentz", lorentz},
              {"anticommutation", anticommutation},
              {"orthonormality", orthonormality},
              {"lift", lift},
              {"classify", classify},
              {"spectral", spectral},
              {"condition", condition},
              {"time_dependence", time_dependence},
              {"compatibility", compatibility}};
}

Tolerances parse_tolerances(const Json& cfg, double scale) {
  if (!(scale > 0.0)) throw ConfigError("--tol-scale must be positive");
  Tolerances t;
  std::pair<const char*, double*> fields[] = {
      {"cholesky", &t.cholesky},       {"lorentz", &t.lorentz},
      {"anticommutation", &t.anticommutation},
      {"orthonormality", &t.orthonormality},
      {"lift", &t.lift},               {"classify", &t.classify},
      {"spectral", &t.spectral},       {"condition", &t.condition},
      {"time_dependence", &t.time_dependence},
      {"compatibility", &t.compatibility}};
  if (cfg.contains("tolerances")) {
    const Json& node = cfg["tolerances"];
    check_keys(node,
               {"cholesky", "lorentz", "anticommutation", "orthonormality", "lift", "classify",
                "spectral", "condition", "time_dependence", "compatibility"},
               "tolerances");
    for (auto& [key, ptr] : fields) *ptr = get_number_or(node, key, *ptr, "tolerances");
  }
  for (auto& [key, ptr] : fields) *ptr *= scale;
  return t;
}

chart::MetricField parse_metric(const Json& cfg, Json& resolved) {
  if (!cfg.contains("metric")) throw ConfigError("config is missing 'metric'");
  const Json& node = cfg["metric"];
  check_keys(node, {"catalog", "params", "expressions", "components", "name"}, "metric");
  const expr::Params params =
      node.contains("params") ? parse_params(node["params"], "metric.params") : expr::Params{};

  if (node.contains("catalog") == node.contains("components"))
    throw ConfigError("metric needs exactly one of 'catalog' or 'components'");

  Json echo = node;
  if (node.contains("catalog")) {
    if (!node["catalog"].is_string()) throw ConfigError("metric.catalog must be a string");
    const std::string name = node["catalog"].get<std::string>();
    std::map<std::string, std::string> expressions;
    if (node.contains("expressions")) {
      check_keys(node["expressions"], {"scale_factor"}, "metric.expressions");
      for (const auto& [key, value] : node["expressions"].items()) {
        if (!value.is_string()) throw ConfigError("metric.expressions values must be strings");
        expressions[key] = value.get<std::string>();
      }
    }
    if (node.contains("name")) throw ConfigError("metric.name is only used with components");
    try {
      chart::MetricField m = chart::catalog_metric(name, params, expressions);
      for (const auto& entry : chart::catalog()) {
        if (entry.name != name) continue;
        Json full_params = Json::object();
        for (const auto& [k, v] : entry.defaults) full_params[k] = v;
        for (const auto& [k, v] : params) full_params[k] = v;
        echo["params"] = full_params;
        if (!entry.expression_defaults.empty()) {
          Json ex = Json::object();
          for (const auto& [k, v] : entry.expression_defaults) ex[k] = v;
          for (const auto& [k, v] : expressions) ex[k] = v;
          echo["expressions"] = ex;
        }
      }
      resolved["metric"] = echo;
      return m;
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  }

  if (node.contains("expressions")) throw ConfigError("metric.expressions needs 'catalog'");
  const Json& comps = node["components"];
  check_keys(comps, {"00", "01", "02", "03", "11", "12", "13", "22", "23", "33"},
             "metric.components");
  std::array<expr::Expr, 10> exprs;
  Json full = Json::object();
  for (int i = 0; i < 10; ++i) {
    const char* key = kComponentKeys[i];
    const bool diagonal = key[0] == key[1];
    if (!comps.contains(key)) {
      if (diagonal) throw ConfigError(std::string("metric.components is missing '") + key + "'");
      full[key] = "0";
      continue;
    }
    if (!comps[key].is_string())
      throw ConfigError(std::string("metric.components.") + key + " must be a string");
    exprs[i] = expr::parse(comps[key].get<std::string>());
    full[key] = comps[key];
  }
  for (const auto& e : exprs)
    for (const auto& p : e.parameters())
      if (!params.count(p)) throw ConfigError("metric parameter '" + p + "' has no value");
  echo["components"] = full;
  resolved["metric"] = echo;
  return chart::MetricField::from_components(exprs, params,
                                             get_string_or(node, "name", "user", "metric"));
}

std::vector<Vec4> parse_points(const Json& cfg, Json& resolved) {
  if (!cfg.contains("points")) throw ConfigError("config is missing 'points'");
  const Json& node = cfg["points"];
  if (!node.is_array() || node.empty()) throw ConfigError("points must be a non-empty array");
  std::vector<Vec4> out;
  for (std::size_t i = 0; i < node.size(); ++i)
    out.push_back(parse_vector<4>(node[i], "points[" + std::to_string(i) + "]"));
  resolved["points"] = node;
  return out;
}

dirac::Grid parse_grid(const Json& cfg, Json& resolved) {
  if (!cfg.contains("grid")) throw ConfigError("config is missing 'grid'");
  const Json& node = cfg["grid"];
  check_keys(node, {"axes", "N", "box", "x0", "origin"}, "grid");
  dirac::Grid g;
  g.axes = static_cast<int>(get_number_or(node, "axes", 3, "grid"));
  g.N = static_cast<int>(get_number(node, "N", "grid"));
  g.length = get_number(node, "box", "grid");
  g.x0 = get_number_or(node, "x0", 0.0, "grid");
  if (node.contains("origin")) g.origin = parse_vector<3>(node["origin"], "grid.origin");
  try {
    g.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  resolved["grid"] = Json{{"axes", g.axes}, {"N", g.N}, {"box", g.length}, {"x0", g.x0},
                          {"origin", to_json(g.origin)}};
  return g;
}

chart::SpatialMap parse_map(const Json& node, const std::string& where) {
  check_keys(node, {"components", "inverse", "params", "domain", "affine", "rotation"}, where);
  const int forms = int(node.contains("components")) + int(node.contains("affine")) +
                    int(node.contains("rotation"));
  if (forms != 1)
    throw ConfigError(where + " needs exactly one of 'components', 'affine' or 'rotation'");

  if (node.contains("affine")) {
    const Json& a = node["affine"];
    check_keys(a, {"A", "c"}, where + ".affine");
    if (!a.contains("A")) throw ConfigError(where + ".affine is missing 'A'");
    const Mat3 A = parse_matrix<3>(a["A"], where + ".affine.A");
    const Vec3 c = a.contains("c") ? parse_vector<3>(a["c"], where + ".affine.c") : Vec3::Zero();
    if (std::abs(A.determinant()) < 1e-14) throw ConfigError(where + ".affine.A is singular");
    return chart::SpatialMap::affine(A, c);
  }
  if (node.contains("rotation")) {
    const Json& r = node["rotation"];
    check_keys(r, {"axis", "angle", "scale", "shift"}, where + ".rotation");
    const int axis = static_cast<int>(get_number(r, "axis", where + ".rotation"));
    if (axis < 1 || axis > 3) throw ConfigError(where + ".rotation.axis must be 1, 2 or 3");
    const double angle = get_number(r, "angle", where + ".rotation");
    const double scale = get_number_or(r, "scale", 1.0, where + ".rotation");
    if (!(scale > 0.0)) throw ConfigError(where + ".rotation.scale must be positive");
    const Vec3 shift =
        r.contains("shift") ? parse_vector<3>(r["shift"], where + ".rotation.shift") : Vec3::Zero();
    return chart::SpatialMap::affine(scale * lorentz::rotation3(axis, angle), shift);
  }

  const expr::Params params =
      node.contains("params") ? parse_params(node["params"], where + ".params") : expr::Params{};
  chart::Domain domain;
  if (node.contains("domain")) {
    const Json& d = node["domain"];
    check_keys(d, {"lo", "hi"}, where + ".domain");
    if (!d.contains("lo") || !d.contains("hi"))
      throw ConfigError(where + ".domain needs 'lo' and 'hi'");
    domain = chart::Domain::box(parse_vector<3>(d["lo"], where + ".domain.lo"),
                                parse_vector<3>(d["hi"], where + ".domain.hi"));
  }
  try {
    chart::SpatialMap map(parse_triple(node["components"], where + ".components"), params,
                          domain);
    if (node.contains("inverse"))
      map = map.with_inverse(parse_triple(node["inverse"], where + ".inverse"));
    return map;
  } catch (const InvalidArgument& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

std::vector<dirac::GaugeChoice> parse_charts(const Json& cfg, Json& resolved) {
  std::vector<dirac::GaugeChoice> out(2);
  Json echo = Json::array();
  const Json empty = Json::array();
  const Json& node = cfg.contains("charts") ? cfg["charts"] : empty;
  if (!node.is_array() || node.size() > 2)
    throw ConfigError("charts must be an array of at most 2 entries");
  for (std::size_t i = 0; i < 2; ++i) {
    const std::string where = "charts[" + std::to_string(i) + "]";
    Json e = i < node.size() ? node[i] : Json::object();
    check_keys(e, {"map", "prescription", "triad_rate"}, where);
    if (e.contains("map")) out[i].map = parse_map(e["map"], where + ".map");
    const std::string p = get_string_or(e, "prescription", "diagonal", where);
    try {
      out[i].prescription = tetrad::parse_prescription(p);
    } catch (const InvalidArgument& err) {
      throw ConfigError(err.what());
    }
    out[i].triad_rate = get_number_or(e, "triad_rate", 0.0, where);
    Json echo_entry = Json::object();
    echo_entry["map"] = e.contains("map") ? e["map"] : Json{{"components", {"x1", "x2", "x3"}}};
    echo_entry["prescription"] = p;
    echo_entry["triad_rate"] = out[i].triad_rate;
    echo.push_back(echo_entry);
  }
  resolved["charts"] = echo;
  return out;
}

std::vector<Vec3> parse_samples(const Json& cfg, std::uint64_t seed, Json& resolved) {
  if (cfg.contains("samples") == cfg.contains("sample_box"))
    throw ConfigError("config needs exactly one of 'samples' or 'sample_box'");
  std::vector<Vec3> out;
  if (cfg.contains("samples")) {
    const Json& node = cfg["samples"];
    if (!node.is_array()) throw ConfigError("samples must be an array");
    for (std::size_t i = 0; i < node.size(); ++i)
      out.push_back(parse_vector<3>(node[i], "samples[" + std::to_string(i) + "]"));
    resolved["samples"] = node;
    return out;
  }
  const Json& box = cfg["sample_box"];
  check_keys(box, {"lo", "hi", "count"}, "sample_box");
  if (!box.contains("lo") || !box.contains("hi"))
    throw ConfigError("sample_box needs 'lo' and 'hi'");
  const Vec3 lo = parse_vector<3>(box["lo"], "sample_box.lo");
  const Vec3 hi = parse_vector<3>(box["hi"], "sample_box.hi");
  const int count = static_cast<int>(get_number_or(box, "count", 32, "sample_box"));
  if (count < 1) throw ConfigError("sample_box.count must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < count; ++i) {
    Vec3 x;
    for (int k = 0; k < 3; ++k) x[k] = lo[k] + (hi[k] - lo[k]) * unit(rng);
    out.push_back(x);
  }
  resolved["sample_box"] = Json{{"lo", to_json(lo)}, {"hi", to_json(hi)}, {"count", count}};
  return out;
}

Mat4 parse_lorentz(const Json& node, const std::string& where) {
  check_keys(node, {"matrix", "rotation", "boost"}, where);
  if (node.size() != 1)
    throw ConfigError(where + " needs exactly one of 'matrix', 'rotation' or 'boost'");
  if (node.contains("matrix")) return parse_matrix<4>(node["matrix"], where + ".matrix");
  const bool rot = node.contains("rotation");
  const Json& p = rot ? node["rotation"] : node["boost"];
  const std::string sub = where + (rot ? ".rotation" : ".boost");
  check_keys(p, {"axis", rot ? "angle" : "rapidity"}, sub);
  const int axis = static_cast<int>(get_number(p, "axis", sub));
  if (axis < 1 || axis > 3) throw ConfigError(sub + ".axis must be 1, 2 or 3");
  return rot ? lorentz::rotation(axis, get_number(p, "angle", sub))
             : lorentz::boost(axis, get_number(p, "rapidity", sub));
}

Json to_json(const Mat4& m) {
  Json out = Json::array();
  for (int r = 0; r < 4; ++r) out.push_back({m(r, 0), m(r, 1), m(r, 2), m(r, 3)});
  return out;
}

Json to_json(const Mat3& m) {
  Json out = Json::array();
  for (int r = 0; r < 3; ++r) out.push_back({m(r, 0), m(r, 1), m(r, 2)});
  return out;
}

Json to_json(const Vec3& v) { return Json{v[0], v[1], v[2]}; }
Json to_json(const Vec4& v) { return Json{v[0], v[1], v[2], v[3]}; }

Json to_json(const CMat4& m) {
  Json out = Json::array();
  for (int r = 0; r < 4; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 4; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    out.push_back(row);
  }
  return out;
}

Json to_json(const dirac::Spectrum& s) {
  Json re = Json::array();
  for (const Complex& v : s.values) re.push_back(v.real());
  return Json{{"real", re}, {"max_imag", s.max_imag}};
}

}  // namespace diracgauge::cli
