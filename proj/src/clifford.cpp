#include "diracgauge/clifford.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "diracgauge/lorentz.hpp"

namespace diracgauge::clifford {

namespace {

using Mat2c = Eigen::Matrix2cd;

std::array<Mat2c, 3> pauli() {
  const Complex i(0.0, 1.0);
  Mat2c s1, s2, s3;
  s1 << 0, 1, 1, 0;
  s2 << 0, -i, i, 0;
  s3 << 1, 0, 0, -1;
  return {s1, s2, s3};
}

CMat4 blocks(const Mat2c& tl, const Mat2c& tr, const Mat2c& bl, const Mat2c& br) {
  CMat4 m;
  m << tl, tr, bl, br;
  return m;
}

std::array<double, 4> kEta = {1.0, -1.0, -1.0, -1.0};

}  // namespace

const char* to_string(Representation r) {
  switch (r) {
    case Representation::Dirac: return "dirac";
    case Representation::Chiral: return "chiral";
    case Representation::Custom: return "custom";
  }
  return "?";
}

FlatGammaSet FlatGammaSet::dirac() {
  const auto s = pauli();
  const Mat2c one = Mat2c::Identity();
  const Mat2c zero = Mat2c::Zero();
  GammaSet g;
  g[0] = blocks(one, zero, zero, -one);
  for (int k = 0; k < 3; ++k) g[k + 1] = blocks(zero, s[k], -s[k], zero);
  return {g, Representation::Dirac};
}

FlatGammaSet FlatGammaSet::chiral() {
  const auto s = pauli();
  const Mat2c one = Mat2c::Identity();
  const Mat2c zero = Mat2c::Zero();
  GammaSet g;
  g[0] = blocks(zero, one, one, zero);
  for (int k = 0; k < 3; ++k) g[k + 1] = blocks(zero, s[k], -s[k], zero);
  return {g, Representation::Chiral};
}

FlatGammaSet FlatGammaSet::custom(const GammaSet& g) {
  const double r = check_anticommutation(g, eta());
  if (!(r <= 1e-14)) throw InvalidArgument("custom gammas violate the Clifford relation");
  return {g, Representation::Custom};
}

FlatGammaSet flat_gammas(std::string_view rep) {
  if (rep == "dirac") return FlatGammaSet::dirac();
  if (rep == "chiral") return FlatGammaSet::chiral();
  throw UnknownRepresentation("unknown gamma representation '" + std::string(rep) + "'");
}

GammaSet deform(const FlatGammaSet& flat, const Mat4& a) {
  GammaSet out;
  for (int mu = 0; mu < 4; ++mu) {
    out[mu].setZero();
    for (int alpha = 0; alpha < 4; ++alpha) out[mu] += a(mu, alpha) * flat[alpha];
  }
  return out;
}

double check_anticommutation(const GammaSet& gammas, const Mat4& g_inv) {
  double worst = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu; nu < 4; ++nu) {
      const CMat4 r = gammas[mu] * gammas[nu] + gammas[nu] * gammas[mu] -
                      2.0 * g_inv(mu, nu) * CMat4::Identity();
      worst = std::max(worst, max_abs(r));
    }
  return worst;
}

CMat4 hermitizing_matrix(const GammaSet& gammas) {
  // Real basis of the 16-dimensional space of hermitian 4x4 matrices.
  std::array<CMat4, 16> basis;
  int n = 0;
  for (int r = 0; r < 4; ++r)
    for (int c = r; c < 4; ++c) {
      CMat4 e = CMat4::Zero();
      e(r, c) = e(c, r) = 1.0;
      basis[n++] = e;
      if (r != c) {
        CMat4 f = CMat4::Zero();
        f(r, c) = Complex(0.0, 1.0);
        f(c, r) = Complex(0.0, -1.0);
        basis[n++] = f;
      }
    }

  // A gamma^mu - gamma^mu^dagger A = 0, split into real and imaginary rows.
  Eigen::MatrixXd system(4 * 32, 16);
  for (int k = 0; k < 16; ++k) {
    for (int mu = 0; mu < 4; ++mu) {
      const CMat4 r = basis[k] * gammas[mu] - gammas[mu].adjoint() * basis[k];
      for (int e = 0; e < 16; ++e) {
        system(mu * 32 + e, k) = r(e / 4, e % 4).real();
        system(mu * 32 + 16 + e, k) = r(e / 4, e % 4).imag();
      }
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-10 * std::max(sv[0], 1e-300);
  int nullity = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] <= cutoff) ++nullity;
  if (nullity != 1)
    throw NoHermitizer("hermitizing condition has a " + std::to_string(nullity) +
                           "-dimensional solution space",
                       sv[sv.size() - 1]);

  const Eigen::VectorXd coef = svd.matrixV().col(15);
  CMat4 A = CMat4::Zero();
  for (int k = 0; k < 16; ++k) A += coef[k] * basis[k];
  A = 0.5 * (A + A.adjoint());

  const double det = std::abs(A.determinant());
  if (!(det > 0.0)) throw NoHermitizer("hermitizing matrix is singular", det);
  A /= std::pow(det, 0.25);

  const CMat4 B0 = A * gammas[0];
  Eigen::SelfAdjointEigenSolver<CMat4> es(0.5 * (B0 + B0.adjoint()), Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (hi < 0.0) {
    A = -A;
  } else if (!(lo > 0.0)) {
    throw NoHermitizer("A gamma^0 is indefinite", lo);
  }
  return A;
}

Similarity apply_similarity(const GammaSet& gammas, const CMat4& A, const CMat4& S) {
  Eigen::PartialPivLU<CMat4> lu(S);
  const double det = std::abs(lu.determinant());
  if (!(det > 1e-14 * std::pow(std::max(max_abs(S), 1e-300), 4)))
    throw SingularMatrix("similarity S is singular", det);
  Similarity out;
  for (int mu = 0; mu < 4; ++mu) out.gammas[mu] = lu.solve(gammas[mu] * S);
  out.A = S.adjoint() * A * S;
  return out;
}

CMat4 spinor_generator(const Mat4& omega, const FlatGammaSet& flat) {
  CMat4 sigma = CMat4::Zero();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const double lowered = kEta[a] * omega(a, b);
      if (lowered != 0.0) sigma += (0.25 * lowered) * (flat[a] * flat[b]);
    }
  return sigma;
}

double lift_residual(const CMat4& S, const Mat4& L, const FlatGammaSet& flat) {
  Eigen::PartialPivLU<CMat4> lu(S);
  double worst = 0.0;
  for (int a = 0; a < 4; ++a) {
    CMat4 rhs = CMat4::Zero();
    for (int b = 0; b < 4; ++b) rhs += L(a, b) * flat[b];
    worst = std::max(worst, max_abs(lu.solve(flat[a] * S) - rhs));
  }
  return worst;
}

SpinTransform spin_lift(const Mat4& L, const FlatGammaSet& flat) {
  const Mat4 omega = lorentz::lorentz_log(L);
  SpinTransform out;
  out.L = L;
  out.S = spinor_generator(omega, flat).exp();
  out.residual = lift_residual(out.S, L, flat);
  if (!(out.residual <= 1e-10))
    throw LiftVerificationFailed("spin lift fails S^-1 g S = L g", out.residual);
  return out;
}

SpinTransform spin_lift_path(const std::vector<Mat4>& steps, const FlatGammaSet& flat) {
  SpinTransform out;
  out.S = CMat4::Identity();
  out.L = Mat4::Identity();
  for (const Mat4& L : steps) {
    const SpinTransform step = spin_lift(L, flat);
    out.S = out.S * step.S;
    out.L = out.L * L;
  }
  out.residual = lift_residual(out.S, out.L, flat);
  return out;
}

HermParts herm_antiherm_parts(const CMat4& M) {
  const CMat4 adj = M.adjoint();
  return {0.5 * (M + adj), 0.5 * (M - adj)};
}

}  // namespace diracgauge::clifford
