#include "diracgauge/dirac.hpp"

namespace diracgauge::dirac {

namespace {

CMat4 antiherm(const CMat4& m) { return 0.5 * (m - m.adjoint()); }

}  // namespace

ConditionReport check_H_equivalence_condition(
    const std::function<CMat4(const Vec4&)>& S, const tetrad::GammaField& gf,
    const Connection& conn, const Grid& grid, double time_step,
    const std::optional<Connection>& transformed_conn, const fd::Options& opts) {
  grid.validate();
  fd::Options time_opts = opts;
  if (time_step > 0.0) time_opts.step = time_step;

  ConditionReport r;
  for (int s = 0; s < grid.sites(); ++s) {
    const Vec4 X = grid.point(s);
    const CMat4 Sx = S(X);
    Eigen::PartialPivLU<CMat4> lu(Sx);
    const CMat4 Sinv = lu.inverse();
    const GammaSet g = gf.at(X);
    const CMat4 A = gf.hermitizer(X);
    const ConnectionSet G = conn.at(X);
    const ConnectionSet Gt = transformed_conn ? transformed_conn->at(X) : G;

    CMat4 sum = CMat4::Zero();
    CMat4 lhs;
    for (int mu = 0; mu < 4; ++mu) {
      const CMat4 dS = fd::partial(S, X, mu, mu == 0 ? time_opts : opts);
      if (mu == 0) {
        r.dfw_hamiltonian = std::max(r.dfw_hamiltonian, max_abs(dS));
        lhs = A * g[0] * dS * Sinv;
      } else {
        r.spatial_variation = std::max(r.spatial_variation, max_abs(dS));
      }
      const CMat4 DS = dS + G[mu] * Sx - Sx * Gt[mu];
      sum += A * g[mu] * DS * Sinv;
    }
    const CMat4 rhs = antiherm(sum);
    r.qrd_hamiltonian = std::max(r.qrd_hamiltonian, max_abs(lhs - rhs));
    r.qrd_hamiltonian_antiherm = std::max(r.qrd_hamiltonian_antiherm, max_abs(antiherm(lhs) - rhs));
    r.dfw_energy = std::max(r.dfw_energy, max_abs(antiherm(lhs)));
    r.modified_energy = std::max(r.modified_energy, max_abs(antiherm(sum - lhs)));
  }
  return r;
}

}  // namespace diracgauge::dirac
