#include "diracgauge/dirac.hpp"

namespace diracgauge::dirac {

tetrad::TetradField gauge_tetrad(const chart::MetricField& m, const GaugeChoice& c,
                                 const fd::Options& opts) {
  tetrad::TetradField t = c.map.is_identity()
                              ? tetrad::TetradField::prescribed(m, c.prescription)
                              : tetrad::TetradField::via_chart(m, c.map, c.prescription, opts);
  return c.triad_rate != 0.0 ? t.rotating(c.triad_rate) : t;
}

namespace {

Spectrum operator_spectrum(const DiscreteOperator& op, bool zero_momentum) {
  return zero_momentum ? spectrum(CMat(zero_momentum_block(op))) : spectrum(op);
}

}  // namespace

ExperimentReport gauge_experiment(const ExperimentConfig& cfg) {
  cfg.grid.validate();
  const clifford::FlatGammaSet flat = clifford::flat_gammas(cfg.representation);
  const chart::MetricField& m = cfg.metric;

  std::vector<Vec4> sites;
  for (int s = 0; s < cfg.grid.sites(); ++s) sites.push_back(cfg.grid.point(s));

  ExperimentReport r;
  for (const Vec4& X : sites) {
    if (!chart::check_admissible(m, X).ok) {
      r.admissible = false;
      throw NotAdmissible("metric is not admissible at a grid site");
    }
  }
  r.isotropic = chart::is_space_isotropic_diagonal(m, sites).ok;

  const tetrad::TetradField t1 = gauge_tetrad(m, cfg.first, cfg.fd);
  const tetrad::TetradField t2 = gauge_tetrad(m, cfg.second, cfg.fd);
  const tetrad::GammaField gf1 = tetrad::gamma_from_tetrad(t1, flat);
  const tetrad::GammaField gf2 = tetrad::gamma_from_tetrad(t2, flat);

  for (const Vec4& X : sites) {
    const Mat4 g_inv = m.at(X).g_inv;
    r.anticommutation_residual =
        std::max({r.anticommutation_residual, clifford::check_anticommutation(gf1.at(X), g_inv),
                  clifford::check_anticommutation(gf2.at(X), g_inv)});
    const auto L = tetrad::inter_chart_L(t1, t2, X);
    r.lorentz_residual = std::max(r.lorentz_residual, L.check.residual);
  }
  r.L_first_site = tetrad::inter_chart_L(t1, t2, sites.front()).L;
  r.dL_dt_max = tetrad::time_dependence_of_L(t1, t2, sites, cfg.time_step).max_norm;

  auto S_field = [t1, t2, flat](const Vec4& X) {
    return clifford::spin_lift(tetrad::inter_chart_L(t1, t2, X).L, flat).S;
  };
  std::vector<CMat4> S_blocks;
  for (const Vec4& X : sites) {
    const auto lift = clifford::spin_lift(tetrad::inter_chart_L(t1, t2, X).L, flat);
    r.lift_residual = std::max(r.lift_residual, lift.residual);
    S_blocks.push_back(lift.S);
  }

  const bool dfw = cfg.variant == Variant::DFW;
  const Connection conn1 =
      dfw ? Connection::dfw(t1, m, flat, cfg.fd, cfg.compatibility_tol) : Connection::trivial();
  const Connection conn2 =
      dfw ? Connection::dfw(t2, m, flat, cfg.fd, cfg.compatibility_tol) : Connection::trivial();
  if (dfw) {
    for (const Vec4& X : sites) {
      for (const auto* t : {&t1, &t2}) {
        const double res =
            dfw_spin_connection(*t, m, flat, X, cfg.fd, cfg.compatibility_tol).compatibility_residual;
        r.compatibility_residual = std::max(r.compatibility_residual, res);
      }
    }
  }
  r.conditions = check_H_equivalence_condition(S_field, gf1, conn1, cfg.grid, cfg.time_step,
                                                conn2, cfg.fd);

  if (r.dL_dt_max > cfg.time_dependence_tol)
    r.reasons.push_back("the local Lorentz transformation between the tetrads depends on x0");
  const double condition = dfw ? r.conditions.dfw_hamiltonian : r.conditions.qrd_hamiltonian;
  if (condition > cfg.condition_tol)
    r.reasons.push_back(dfw ? "d0 S does not vanish"
                            : "the fixed-connection Hamiltonian condition fails");

  try {
    const DiscreteOperator H1 = assemble_hamiltonian(gf1, conn1, m, cfg.grid, cfg.mass, cfg.variant, cfg.fd);
    const DiscreteOperator H2 = assemble_hamiltonian(gf2, conn2, m, cfg.grid, cfg.mass, cfg.variant, cfg.fd);
    const DiscreteOperator E1 = energy_operator(H1);
    const DiscreteOperator E2 = energy_operator(H2);
    r.operator_distance = max_abs(E2.matrix - conjugate(E1, S_blocks).matrix);
    r.H1 = operator_spectrum(H1, cfg.zero_momentum);
    r.H2 = operator_spectrum(H2, cfg.zero_momentum);
    r.E1 = operator_spectrum(E1, cfg.zero_momentum);
    r.E2 = operator_spectrum(E2, cfg.zero_momentum);
  } catch (const NumericalError& e) {
    r.failure = e.what();
    r.reasons.push_back(std::string("operator stage failed: ") + e.what());
    r.equivalent = false;
    return r;
  }
  r.spectral_distance = spectral_distance(r.E1, r.E2);
  r.hamiltonian_spectral_distance = spectral_distance(r.H1, r.H2);
  r.max_imag_E = std::max(r.E1.max_imag, r.E2.max_imag);
  if (r.spectral_distance > cfg.spectral_tol)
    r.reasons.push_back("the energy spectra differ");
  r.equivalent = r.reasons.empty();
  return r;
}

}  // namespace diracgauge::dirac
