#include <cmath>

#include "diracgauge/dirac.hpp"

namespace diracgauge::dirac {

namespace {

const Complex kI(0.0, 1.0);

// Fourier differentiation matrix on N equispaced points of a period of
// length L.
Eigen::MatrixXd spectral_derivative(int N, double L) {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(N, N);
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) {
      if (j == k) continue;
      const double arg = M_PI * (j - k) / N;
      const double sign = ((j - k) % 2 == 0) ? 1.0 : -1.0;
      const double kernel = (N % 2 == 0) ? 1.0 / std::tan(arg) : 1.0 / std::sin(arg);
      D(j, k) = (M_PI / L) * sign * kernel;
    }
  return D;
}

// d Psi / d x^{axis+1} on the grid.
CVec grid_derivative(const CVec& psi, const Grid& grid, int axis, Derivative scheme) {
  const int n = grid.sites();
  CVec out = CVec::Zero(psi.size());
  if (scheme == Derivative::Central) {
    const double inv = 1.0 / (2.0 * grid.spacing());
    for (int s = 0; s < n; ++s)
      out.segment<4>(4 * s) = (psi.segment<4>(4 * grid.neighbor(s, axis, +1)) -
                               psi.segment<4>(4 * grid.neighbor(s, axis, -1))) * inv;
    return out;
  }
  const Eigen::MatrixXd D = spectral_derivative(grid.N, grid.length);
  int stride = 1;
  for (int k = 0; k < axis; ++k) stride *= grid.N;
  for (int s = 0; s < n; ++s) {
    const int c = (s / stride) % grid.N;
    for (int k = 0; k < grid.N; ++k) {
      if (D(c, k) == 0.0) continue;
      out.segment<4>(4 * s) += D(c, k) * psi.segment<4>(4 * grid.neighbor(s, axis, k - c));
    }
  }
  return out;
}

}  // namespace

StressEnergy stress_energy(const tetrad::GammaField& gf, const Connection& conn,
                           const chart::MetricField& m, const CVec& psi, const Grid& grid,
                           double mass, Variant variant, Derivative scheme,
                           const fd::Options& opts) {
  const DiscreteOperator H = assemble_hamiltonian(gf, conn, m, grid, mass, variant, opts);
  if (psi.size() != H.matrix.rows()) throw InvalidArgument("spinor has the wrong length");
  const DiscreteOperator E = energy_operator(H);

  std::array<CVec, 4> dpsi;
  dpsi[0] = -kI * (H.matrix * psi);
  for (int j = 1; j < 4; ++j)
    dpsi[j] = j <= grid.axes ? grid_derivative(psi, grid, j - 1, scheme)
                             : CVec::Zero(psi.size()).eval();

  StressEnergy out;
  const int n = grid.sites();
  out.t.resize(n);
  out.lagrangian.resize(n);
  for (int s = 0; s < n; ++s) {
    const Vec4 X = grid.point(s);
    const GammaSet g = gf.at(X);
    const CMat4 A = gf.hermitizer(X);
    const ConnectionSet G = conn.at(X);
    const auto p = psi.segment<4>(4 * s);

    std::array<CMat4, 4> B;
    for (int mu = 0; mu < 4; ++mu) B[mu] = A * g[mu];

    Complex kinetic = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
      const Eigen::Vector4cd D = dpsi[mu].segment<4>(4 * s) + G[mu] * p;
      kinetic += p.dot(B[mu] * D);
    }
    // L = i/2 [X - conj(X) + 2 i m Psi^+ A Psi] with X = Psi^+ B^mu D_mu Psi.
    const double L = -kinetic.imag() - mass * p.dot(A * p).real();
    out.lagrangian[s] = L;

    Mat4 t;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        const Complex c = p.dot(B[mu] * dpsi[nu].segment<4>(4 * s));
        t(mu, nu) = -c.imag() - (mu == nu ? L : 0.0);
      }
    out.t[s] = t;
    out.field_energy += t(0, 0) * m.at(X).sqrt_minus_g * grid.cell_volume();
  }
  out.expectation = E.inner(psi, E.matrix * psi).real();
  return out;
}

}  // namespace diracgauge::dirac
