#include "commands.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace diracgauge::cli {

namespace {

struct Context {
  const Json& cfg;
  Tolerances tol;
  std::uint64_t seed;
  Json& resolved;
  Json& results;
};

using Handler = std::function<int(Context&)>;

clifford::FlatGammaSet parse_representation(const Json& cfg, Json& resolved) {
  const std::string rep = get_string_or(cfg, "representation", "dirac", "config");
  resolved["representation"] = rep;
  return clifford::flat_gammas(rep);
}

dirac::ExperimentConfig parse_experiment(const Json& cfg, const Tolerances& tol,
                                         Json& resolved) {
  dirac::ExperimentConfig e;
  e.metric = parse_metric(cfg, resolved);
  const auto charts = parse_charts(cfg, resolved);
  e.first = charts[0];
  e.second = charts[1];
  e.variant = dirac::parse_variant(get_string_or(cfg, "variant", "DFW", "config"));
  resolved["variant"] = dirac::to_string(e.variant);
  e.grid = parse_grid(cfg, resolved);
  e.mass = get_number_or(cfg, "mass", 1.0, "config");
  resolved["mass"] = e.mass;
  e.representation = get_string_or(cfg, "representation", "dirac", "config");
  parse_representation(cfg, resolved);
  if (cfg.contains("zero_momentum")) {
    if (!cfg["zero_momentum"].is_boolean()) throw ConfigError("zero_momentum must be a boolean");
    e.zero_momentum = cfg["zero_momentum"].get<bool>();
  }
  resolved["zero_momentum"] = e.zero_momentum;
  e.time_step = get_number_or(cfg, "time_step", 0.0, "config");
  resolved["time_step"] = e.time_step;
  e.spectral_tol = tol.spectral;
  e.condition_tol = tol.condition;
  e.time_dependence_tol = tol.time_dependence;
  e.compatibility_tol = tol.compatibility;
  return e;
}

Json condition_json(const dirac::ConditionReport& c) {
  return Json{{"d0_S", c.dfw_hamiltonian},
              {"fixed_connection_hamiltonian", c.qrd_hamiltonian},
              {"fixed_connection_hamiltonian_antiherm_lhs", c.qrd_hamiltonian_antiherm},
              {"dfw_energy", c.dfw_energy},
              {"modified_energy", c.modified_energy},
              {"spatial_variation", c.spatial_variation}};
}

// ---------------------------------------------------------------------------

int cmd_factorize(Context& ctx) {
  check_keys(ctx.cfg, {"metric", "points", "tolerances"}, "config");
  const chart::MetricField m = parse_metric(ctx.cfg, ctx.resolved);
  const std::vector<Vec4> points = parse_points(ctx.cfg, ctx.resolved);

  Json rows = Json::array();
  int rejected = 0;
  double worst = 0.0;
  for (const Vec4& X : points) {
    const chart::AdmissibilityReport adm = chart::check_admissible(m, X);
    Json row{{"point", to_json(X)},
             {"admissible", adm.ok},
             {"g00", adm.g00},
             {"spatial_eigenvalues", to_json(adm.spatial_eigenvalues)},
             {"in_domain", adm.in_domain}};
    if (adm.ok) {
      const Mat4 G = m.components(X);
      const lorentz::EtaCholesky f = lorentz::eta_cholesky(G);
      const double relative = f.residual / max_abs(G);
      worst = std::max(worst, relative);
      row["C"] = to_json(f.C);
      row["residual"] = f.residual;
      row["relative_residual"] = relative;
    } else {
      ++rejected;
    }
    rows.push_back(row);
  }
  ctx.results["points"] = rows;
  ctx.results["max_relative_residual"] = worst;
  if (rejected > 0)
    throw NotAdmissible("metric '" + m.name() + "' is not admissible at " +
                        std::to_string(rejected) + " of " + std::to_string(points.size()) +
                        " points");
  if (worst > ctx.tol.cholesky)
    throw NumericalError("factorization residual exceeds tolerance", worst);
  return kOk;
}

int cmd_tetrad(Context& ctx) {
  check_keys(ctx.cfg, {"metric", "points", "charts", "representation", "tolerances"},
             "config");
  const chart::MetricField m = parse_metric(ctx.cfg, ctx.resolved);
  const std::vector<Vec4> points = parse_points(ctx.cfg, ctx.resolved);
  if (!ctx.cfg.contains("charts") || !ctx.cfg["charts"].is_array() ||
      ctx.cfg["charts"].empty())
    throw ConfigError("charts must list at least one chart");
  const std::size_t count = ctx.cfg["charts"].size();
  const auto charts = parse_charts(ctx.cfg, ctx.resolved);
  while (ctx.resolved["charts"].size() > count) ctx.resolved["charts"].erase(count);
  const clifford::FlatGammaSet flat = parse_representation(ctx.cfg, ctx.resolved);

  std::vector<tetrad::TetradField> fields;
  std::vector<tetrad::GammaField> gammas;
  for (std::size_t i = 0; i < count; ++i) {
    fields.push_back(dirac::gauge_tetrad(m, charts[i]));
    gammas.push_back(tetrad::gamma_from_tetrad(fields.back(), flat));
  }

  for (const Vec4& X : points)
    if (!chart::check_admissible(m, X).ok)
      throw NotAdmissible("metric '" + m.name() + "' is not admissible at a sample point");

  Json rows = Json::array();
  double worst_ortho = 0.0;
  double worst_anti = 0.0;
  for (const Vec4& X : points) {
    const chart::MetricPoint g = m.at(X);
    Json row{{"point", to_json(X)}};
    Json per_chart = Json::array();
    for (std::size_t i = 0; i < count; ++i) {
      const Mat4 a = fields[i].a(X);
      const double ortho = tetrad::orthonormality_residual(a, g.g);
      const double anti = clifford::check_anticommutation(gammas[i].at(X), g.g_inv);
      worst_ortho = std::max(worst_ortho, ortho);
      worst_anti = std::max(worst_anti, anti);
      per_chart.push_back(Json{{"a", to_json(a)},
                               {"orthonormality_residual", ortho},
                               {"anticommutation_residual", anti}});
    }
    row["tetrads"] = per_chart;
    if (count == 2) {
      const auto L = tetrad::inter_chart_L(fields[0], fields[1], X);
      row["L"] = to_json(L.L);
      row["lorentz_residual"] = L.check.residual;
      row["proper_orthochronous"] = L.check.proper && L.check.orthochronous;
    }
    rows.push_back(row);
  }
  ctx.results["points"] = rows;
  ctx.results["hermitizer"] = to_json(gammas.front().hermitizer(points.front()));
  ctx.results["max_orthonormality_residual"] = worst_ortho;
  ctx.results["max_anticommutation_residual"] = worst_anti;
  if (count == 2) {
    std::vector<Vec4> samples = points;
    ctx.results["dL_dt_max"] = tetrad::time_dependence_of_L(fields[0], fields[1], samples).max_norm;
  }
  if (worst_ortho > ctx.tol.orthonormality)
    throw NumericalError("orthonormality residual exceeds tolerance", worst_ortho);
  if (worst_anti > ctx.tol.anticommutation)
    throw NumericalError("anticommutation residual exceeds tolerance", worst_anti);
  return kOk;
}

int cmd_classify_map(Context& ctx) {
  check_keys(ctx.cfg, {"map", "samples", "sample_box", "tolerances"}, "config");
  if (!ctx.cfg.contains("map")) throw ConfigError("config is missing 'map'");
  const chart::SpatialMap map = parse_map(ctx.cfg["map"], "map");
  ctx.resolved["map"] = ctx.cfg["map"];
  const std::vector<Vec3> samples = parse_samples(ctx.cfg, ctx.seed, ctx.resolved);

  const chart::ConformalFit fit = chart::classify_conformal_map(map, samples, ctx.tol.classify);
  Json& r = ctx.results;
  r["class"] = chart::to_string(fit.kind);
  r["residual"] = fit.residual;
  r["sphericity_residual"] = fit.sphericity_residual;
  r["type1_residual"] = fit.type1_residual;
  r["type2_residual"] = fit.type2_residual;
  r["tolerance"] = fit.tolerance;
  switch (fit.kind) {
    case chart::ConformalClass::Type1:
      r["alpha0"] = fit.alpha0;
      r["R"] = to_json(fit.R);
      r["c"] = to_json(fit.c);
      break;
    case chart::ConformalClass::Type2:
      r["b"] = fit.b;
      r["a"] = to_json(fit.a);
      r["R"] = to_json(fit.R);
      r["c"] = to_json(fit.c);
      r["singular_point"] = to_json(fit.a);
      r["singular_point_excluded"] = true;
      r["declared_domain_contains_singular_point"] = fit.singular_point_in_domain;
      break;
    case chart::ConformalClass::NotSpherical:
      r["rejection_margin"] =
          fit.tolerance > 0.0 ? std::min(fit.sphericity_residual, fit.residual) / fit.tolerance
                              : 0.0;
      break;
  }
  return kOk;
}

int cmd_lift(Context& ctx) {
  check_keys(ctx.cfg, {"lorentz", "path", "representation", "tolerances"}, "config");
  const clifford::FlatGammaSet flat = parse_representation(ctx.cfg, ctx.resolved);
  if (ctx.cfg.contains("lorentz") == ctx.cfg.contains("path"))
    throw ConfigError("config needs exactly one of 'lorentz' or 'path'");

  std::vector<Mat4> steps;
  if (ctx.cfg.contains("lorentz")) {
    steps.push_back(parse_lorentz(ctx.cfg["lorentz"], "lorentz"));
    ctx.resolved["lorentz"] = Json{{"matrix", to_json(steps.front())}};
  } else {
    const Json& path = ctx.cfg["path"];
    if (!path.is_array() || path.empty()) throw ConfigError("path must be a non-empty array");
    Json echo = Json::array();
    for (std::size_t i = 0; i < path.size(); ++i) {
      steps.push_back(parse_lorentz(path[i], "path[" + std::to_string(i) + "]"));
      echo.push_back(Json{{"matrix", to_json(steps.back())}});
    }
    ctx.resolved["path"] = echo;
  }

  Mat4 L = Mat4::Identity();
  Json checks = Json::array();
  for (const Mat4& step : steps) {
    const lorentz::LorentzCheck c = lorentz::is_lorentz(step, ctx.tol.lorentz);
    checks.push_back(Json{{"lorentz", c.ok},
                          {"proper", c.proper},
                          {"orthochronous", c.orthochronous},
                          {"residual", c.residual}});
    if (!(c.ok && c.proper && c.orthochronous))
      throw InvalidArgument("input is not a proper orthochronous Lorentz matrix");
    L = L * step;
  }
  ctx.results["checks"] = checks;
  const clifford::SpinTransform s =
      steps.size() == 1 ? clifford::spin_lift(steps.front(), flat)
                        : clifford::spin_lift_path(steps, flat);
  ctx.results["L"] = to_json(L);
  ctx.results["S"] = to_json(s.S);
  ctx.results["residual"] = s.residual;
  ctx.results["distance_to_identity"] = max_abs(s.S - CMat4::Identity());
  ctx.results["distance_to_minus_identity"] = max_abs(s.S + CMat4::Identity());
  if (s.residual > ctx.tol.lift) throw LiftVerificationFailed("lift residual exceeds tolerance", s.residual);
  return kOk;
}

int cmd_check_conditions(Context& ctx) {
  check_keys(ctx.cfg,
             {"metric", "charts", "variant", "grid", "representation", "time_step", "tolerances"},
             "config");
  const chart::MetricField m = parse_metric(ctx.cfg, ctx.resolved);
  const auto charts = parse_charts(ctx.cfg, ctx.resolved);
  const dirac::Variant variant =
      dirac::parse_variant(get_string_or(ctx.cfg, "variant", "DFW", "config"));
  ctx.resolved["variant"] = dirac::to_string(variant);
  const dirac::Grid grid = parse_grid(ctx.cfg, ctx.resolved);
  const clifford::FlatGammaSet flat = parse_representation(ctx.cfg, ctx.resolved);
  const double time_step = get_number_or(ctx.cfg, "time_step", 0.0, "config");
  ctx.resolved["time_step"] = time_step;

  for (int s = 0; s < grid.sites(); ++s)
    if (!chart::check_admissible(m, grid.point(s)).ok)
      throw NotAdmissible("metric is not admissible at a grid site");

  const tetrad::TetradField t1 = dirac::gauge_tetrad(m, charts[0]);
  const tetrad::TetradField t2 = dirac::gauge_tetrad(m, charts[1]);
  const tetrad::GammaField gf = tetrad::gamma_from_tetrad(t1, flat);
  auto S = [t1, t2, flat](const Vec4& X) {
    return clifford::spin_lift(tetrad::inter_chart_L(t1, t2, X).L, flat).S;
  };
  const bool dfw = variant == dirac::Variant::DFW;
  const dirac::Connection conn1 =
      dfw ? dirac::Connection::dfw(t1, m, flat, {}, ctx.tol.compatibility)
          : dirac::Connection::trivial();
  const std::optional<dirac::Connection> conn2 =
      dfw ? std::optional(dirac::Connection::dfw(t2, m, flat, {}, ctx.tol.compatibility))
          : std::nullopt;
  const dirac::ConditionReport c =
      dirac::check_H_equivalence_condition(S, gf, conn1, grid, time_step, conn2);
  ctx.results["conditions"] = condition_json(c);
  const double decisive = dfw ? c.dfw_hamiltonian : c.qrd_hamiltonian;
  ctx.results["hamiltonian_condition"] = decisive;
  ctx.results["hamiltonian_condition_holds"] = decisive <= ctx.tol.condition;
  return kOk;
}

int cmd_gauge_experiment(Context& ctx) {
  check_keys(ctx.cfg,
             {"metric", "charts", "variant", "grid", "mass", "representation", "zero_momentum",
              "time_step", "tolerances"},
             "config");
  const dirac::ExperimentConfig e = parse_experiment(ctx.cfg, ctx.tol, ctx.resolved);
  const dirac::ExperimentReport r = dirac::gauge_experiment(e);

  Json& out = ctx.results;
  out["admissible"] = r.admissible;
  out["isotropic"] = r.isotropic;
  out["anticommutation_residual"] = r.anticommutation_residual;
  out["lorentz_residual"] = r.lorentz_residual;
  out["L_first_site"] = to_json(r.L_first_site);
  out["dL_dt_max"] = r.dL_dt_max;
  out["lift_residual"] = r.lift_residual;
  out["compatibility_residual"] = r.compatibility_residual;
  out["conditions"] = condition_json(r.conditions);
  if (r.failure.empty()) {
    out["spectra"] = Json{{"H_first", to_json(r.H1)},
                          {"H_second", to_json(r.H2)},
                          {"E_first", to_json(r.E1)},
                          {"E_second", to_json(r.E2)}};
    out["spectral_distance"] = r.spectral_distance;
    out["hamiltonian_spectral_distance"] = r.hamiltonian_spectral_distance;
    out["operator_distance"] = r.operator_distance;
    out["max_imag_E"] = r.max_imag_E;
  }
  out["verdict"] = r.failure.empty() ? (r.equivalent ? "equivalent" : "inequivalent")
                                     : "undetermined";
  out["reasons"] = r.reasons;
  if (!r.failure.empty()) {
    out["failure"] = r.failure;
    return kNumericalFailure;
  }
  return kOk;
}

int cmd_spectrum(Context& ctx) {
  check_keys(ctx.cfg,
             {"metric", "charts", "variant", "grid", "mass", "representation", "zero_momentum",
              "operator", "tolerances"},
             "config");
  if (ctx.cfg.contains("charts") && ctx.cfg["charts"].is_array() && ctx.cfg["charts"].size() > 1)
    throw ConfigError("spectrum takes a single chart");
  const dirac::ExperimentConfig e = parse_experiment(ctx.cfg, ctx.tol, ctx.resolved);
  ctx.resolved["charts"].erase(1);
  ctx.resolved.erase("time_step");
  const std::string which = get_string_or(ctx.cfg, "operator", "both", "config");
  if (which != "H" && which != "E" && which != "both")
    throw ConfigError("operator must be \"H\", \"E\" or \"both\"");
  ctx.resolved["operator"] = which;

  for (int s = 0; s < e.grid.sites(); ++s)
    if (!chart::check_admissible(e.metric, e.grid.point(s)).ok)
      throw NotAdmissible("metric is not admissible at a grid site");

  const clifford::FlatGammaSet flat = clifford::flat_gammas(e.representation);
  const tetrad::TetradField t = dirac::gauge_tetrad(e.metric, e.first);
  const tetrad::GammaField gf = tetrad::gamma_from_tetrad(t, flat);
  const dirac::Connection conn = e.variant == dirac::Variant::DFW
                                     ? dirac::Connection::dfw(t, e.metric, flat, {}, e.compatibility_tol)
                                     : dirac::Connection::trivial();
  const dirac::DiscreteOperator H =
      dirac::assemble_hamiltonian(gf, conn, e.metric, e.grid, e.mass, e.variant);
  auto spec = [&](const dirac::DiscreteOperator& op) {
    return e.zero_momentum ? dirac::spectrum(CMat(dirac::zero_momentum_block(op)))
                           : dirac::spectrum(op);
  };
  ctx.results["dimension"] = H.dimension();
  if (which != "E") ctx.results["H"] = to_json(spec(H));
  if (which != "H") ctx.results["E"] = to_json(spec(dirac::energy_operator(H)));
  return kOk;
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"factorize", cmd_factorize},
      {"tetrad", cmd_tetrad},
      {"classify-map", cmd_classify_map},
      {"lift", cmd_lift},
      {"check-conditions", cmd_check_conditions},
      {"gauge-experiment", cmd_gauge_experiment},
      {"spectrum", cmd_spectrum}};
  return table;
}

Json error_json(const char* kind, const std::string& message) {
  return Json{{"kind", kind}, {"message", message}};
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"factorize",        "tetrad",
                                              "classify-map",     "lift",
                                              "check-conditions", "gauge-experiment",
                                              "spectrum"};
  return names;
}

Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

Outcome run_command(const std::string& command, const Json& config, double tol_scale,
                    std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  Json resolved = config.is_object() ? config : Json::object();
  Json results = Json::object();
  Tolerances tol;

  const auto fail = [&](int code, const char* kind, const std::string& message) {
    out.exit_code = code;
    out.diagnostic = message;
    out.report["error"] = error_json(kind, message);
  };

  try {
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    const auto it = handlers().find(command);
    if (it == handlers().end()) throw ConfigError("unknown command '" + command + "'");
    tol = parse_tolerances(config, tol_scale);
    Context ctx{config, tol, seed, resolved, results};
    out.exit_code = it->second(ctx);
    if (out.exit_code == kNumericalFailure && results.contains("failure")) {
      out.diagnostic = results["failure"].get<std::string>();
      out.report["error"] = error_json("numerical", out.diagnostic);
    }
  } catch (const ConfigError& e) {
    fail(kConfigError, "config", e.what());
  } catch (const expr::SyntaxError& e) {
    fail(kConfigError, "config", std::string("expression syntax: ") + e.what());
  } catch (const expr::UnboundParameter& e) {
    fail(kConfigError, "config", e.what());
  } catch (const InvalidArgument& e) {
    fail(kConfigError, "config", e.what());
  } catch (const NotDiagonal& e) {
    fail(kConfigError, "config", e.what());
  } catch (const nlohmann::json::exception& e) {
    fail(kConfigError, "config", e.what());
  } catch (const NotAdmissible& e) {
    fail(kNotAdmissible, "not_admissible", e.what());
  } catch (const NumericalError& e) {
    fail(kNumericalFailure, "numerical", e.what());
    out.report["error"]["residual"] = e.residual();
  } catch (const std::exception& e) {
    fail(kNumericalFailure, "numerical", e.what());
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Json report;
  report["schema_version"] = kSchemaVersion;
  report["command"] = command;
  report["config"] = resolved;
  report["tolerances"] = tol.to_json();
  report["seed"] = seed;
  report["exit_code"] = out.exit_code;
  report["results"] = results;
  if (out.report.contains("error")) report["error"] = out.report["error"];
  report["timing"] = Json{{"wall_seconds", seconds}};
  out.report = std::move(report);
  return out;
}

}  // namespace diracgauge::cli
