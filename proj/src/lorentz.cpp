#include "diracgauge/lorentz.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace diracgauge::lorentz {

namespace {

constexpr double kEta[4] = {1.0, -1.0, -1.0, -1.0};

}  // namespace

EtaCholesky eta_cholesky(const Mat4& G) {
  const double scale = std::max(max_abs(G), 1e-300);
  Mat4 C = Mat4::Zero();
  // Eliminate from the bottom-right corner: column mu only involves rows >= mu.
  for (int mu = 3; mu >= 0; --mu) {
    double pivot = G(mu, mu);
    for (int a = mu + 1; a < 4; ++a) pivot -= kEta[a] * C(a, mu) * C(a, mu);
    pivot *= kEta[mu];
    if (!(pivot > 1e-14 * scale))
      throw NotAdmissible("metric is not admissible: eta-Cholesky pivot " +
                          std::to_string(mu) + " is " + std::to_string(pivot));
    C(mu, mu) = std::sqrt(pivot);
    for (int nu = mu - 1; nu >= 0; --nu) {
      double s = G(nu, mu);
      for (int a = mu + 1; a < 4; ++a) s -= kEta[a] * C(a, nu) * C(a, mu);
      C(mu, nu) = s / (kEta[mu] * C(mu, mu));
    }
  }
  EtaCholesky out{C, G, 0.0};
  out.residual = max_abs(C.transpose() * eta() * C - G);
  return out;
}

LorentzCheck is_lorentz(const Mat4& L, double tol) {
  LorentzCheck r;
  r.residual = max_abs(L.transpose() * eta() * L - eta());
  r.ok = r.residual <= tol;
  r.proper = L.determinant() > 0.0;
  r.orthochronous = L(0, 0) >= 1.0 - tol;
  return r;
}

LorentzMatrix square_root_coset(const Mat4& b, const Mat4& G) {
  const double mismatch = max_abs(b.transpose() * eta() * b - G);
  if (!(mismatch <= 1e-10 * std::max(1.0, max_abs(G))))
    throw NotASquareRoot("b^T eta b differs from G", mismatch);
  const EtaCholesky f = eta_cholesky(G);
  LorentzMatrix out;
  out.L = f.C.triangularView<Eigen::Lower>().solve<Eigen::OnTheRight>(b);
  out.check = is_lorentz(out.L);
  return out;
}

Mat4 lorentz_log(const Mat4& L) {
  const LorentzCheck chk = is_lorentz(L, 1e-9);
  if (!(chk.ok && chk.proper && chk.orthochronous))
    throw InvalidArgument("lorentz_log needs a proper orthochronous Lorentz matrix");

  Eigen::EigenSolver<Mat4> es(L, false);
  for (int i = 0; i < 4; ++i) {
    const Complex ev = es.eigenvalues()[i];
    if (M_PI - std::abs(std::arg(ev)) < 1e-6)
      throw BranchFailure("rotation angle is pi; split the path", std::abs(ev + 1.0));
  }

  const Mat4 raw = L.log();
  // Project onto so(1,3): eta * omega must be antisymmetric.
  const Mat4 lowered = eta() * raw;
  const Mat4 omega = eta() * (0.5 * (lowered - lowered.transpose()));
  const double err = max_abs(lorentz_exp(omega) - L);
  if (!(err <= 1e-10 * std::max(1.0, max_abs(L))))
    throw BranchFailure("matrix logarithm did not reproduce L", err);
  return omega;
}

Mat4 lorentz_exp(const Mat4& omega) { return omega.exp(); }

Mat3 rotation3(int axis, double angle) {
  if (axis < 1 || axis > 3) throw InvalidArgument("rotation axis must be 1, 2 or 3");
  return Eigen::AngleAxisd(angle, Vec3::Unit(axis - 1)).toRotationMatrix();
}

Mat4 spatial(const Mat3& R) {
  Mat4 out = Mat4::Identity();
  out.bottomRightCorner<3, 3>() = R;
  return out;
}

Mat4 rotation(int axis, double angle) { return spatial(rotation3(axis, angle)); }

Mat4 boost(int axis, double rapidity) {
  if (axis < 1 || axis > 3) throw InvalidArgument("boost axis must be 1, 2 or 3");
  Mat4 out = Mat4::Identity();
  out(0, 0) = out(axis, axis) = std::cosh(rapidity);
  out(0, axis) = out(axis, 0) = std::sinh(rapidity);
  return out;
}

Mat3 sym_sqrt3(const Mat3& h) {
  const Mat3 sym = 0.5 * (h + h.transpose());
  Eigen::SelfAdjointEigenSolver<Mat3> es(sym);
  const double lo = es.eigenvalues().minCoeff();
  if (!(lo > 0.0)) throw NotPositiveDefinite("matrix is not positive definite", lo);
  const Vec3 root = es.eigenvalues().cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
}

Polar polar_decompose3(const Mat3& Q) {
  const double det = Q.determinant();
  if (!(std::abs(det) > 1e-14 * std::pow(std::max(max_abs(Q), 1e-300), 3)))
    throw SingularMatrix("polar decomposition of a singular matrix", std::abs(det));
  Polar p;
  p.U = sym_sqrt3(Q * Q.transpose());
  p.R = p.U.llt().solve(Q);
  return p;
}

}  // namespace diracgauge::lorentz
