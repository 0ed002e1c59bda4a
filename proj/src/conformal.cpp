#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "diracgauge/metric.hpp"

namespace diracgauge::chart {

const char* to_string(ConformalClass c) {
  switch (c) {
    case ConformalClass::NotSpherical: return "NotSpherical";
    case ConformalClass::Type1: return "Type1";
    case ConformalClass::Type2: return "Type2";
  }
  return "?";
}

namespace {

// Nearest orthogonal matrix.
Mat3 orthogonalize(const Mat3& M) {
  Eigen::JacobiSVD<Mat3> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

}  // namespace

ConformalFit classify_conformal_map(const SpatialMap& map, const std::vector<Vec3>& samples,
                                    double tol, const fd::Options& opts) {
  if (samples.size() < 8)
    throw InvalidArgument("classify_conformal_map needs at least 8 samples");

  ConformalFit fit;
  fit.tolerance = tol;

  const std::size_t n = samples.size();
  std::vector<Mat3> F(n);
  std::vector<double> alpha(n);
  for (std::size_t i = 0; i < n; ++i) {
    F[i] = map.jacobian(samples[i], opts);
    const Mat3 C = F[i].transpose() * F[i];
    const double s = C.trace() / 3.0;
    const double dev = max_abs(C - s * Mat3::Identity()) / s;
    fit.sphericity_residual = std::max(fit.sphericity_residual, dev);
    Eigen::SelfAdjointEigenSolver<Mat3> es(C, Eigen::EigenvaluesOnly);
    alpha[i] = std::sqrt(es.eigenvalues().maxCoeff());
  }
  if (!(fit.sphericity_residual <= tol)) {
    fit.kind = ConformalClass::NotSpherical;
    fit.residual = fit.sphericity_residual;
    return fit;
  }

  // Constant alpha.
  double alpha0 = 0.0;
  for (double a : alpha) alpha0 += a;
  alpha0 /= static_cast<double>(n);
  for (double a : alpha) fit.type1_residual = std::max(fit.type1_residual, std::abs(a - alpha0) / alpha0);

  // alpha = b / |x - a|^2  <=>  1/alpha = c0 |x|^2 + c.x + d, c0 = 1/b, c = -2a/b.
  Eigen::MatrixXd design(n, 5);
  Eigen::VectorXd rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& x = samples[i];
    design(i, 0) = x.squaredNorm();
    design.block<1, 3>(i, 1) = x.transpose();
    design(i, 4) = 1.0;
    rhs[i] = 1.0 / alpha[i];
  }
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
  double b2 = 0.0;
  Vec3 a2 = Vec3::Zero();
  fit.type2_residual = std::numeric_limits<double>::infinity();
  if (coef[0] > 0.0 && std::isfinite(coef[0])) {
    b2 = 1.0 / coef[0];
    a2 = -0.5 * b2 * coef.segment<3>(1);
    fit.type2_residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double model = b2 / (samples[i] - a2).squaredNorm();
      fit.type2_residual = std::max(fit.type2_residual, std::abs(model - alpha[i]) / alpha[i]);
    }
  }

  if (fit.type1_residual <= tol) {
    fit.kind = ConformalClass::Type1;
    fit.residual = fit.type1_residual;
    fit.alpha0 = alpha0;
    Mat3 Rsum = Mat3::Zero();
    for (std::size_t i = 0; i < n; ++i) Rsum += F[i] / alpha0;
    fit.R = orthogonalize(Rsum / static_cast<double>(n));
    Vec3 csum = Vec3::Zero();
    for (const Vec3& x : samples) csum += map.apply(x) - alpha0 * fit.R * x;
    fit.c = csum / static_cast<double>(n);
    return fit;
  }

  if (fit.type2_residual <= tol && 10.0 * fit.type2_residual <= fit.type1_residual) {
    fit.kind = ConformalClass::Type2;
    fit.residual = fit.type2_residual;
    fit.b = b2;
    fit.a = a2;
    // D[(x-a)/|x-a|^2] = (I - 2 u u^T) / |x-a|^2 with u the unit vector along x-a.
    Mat3 Rsum = Mat3::Zero();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec3 d = samples[i] - a2;
      const double r2 = d.squaredNorm();
      const Mat3 householder = Mat3::Identity() - 2.0 * d * d.transpose() / r2;
      Rsum += F[i] * (r2 / b2) * householder;
    }
    fit.R = orthogonalize(Rsum / static_cast<double>(n));
    Vec3 csum = Vec3::Zero();
    for (const Vec3& x : samples) {
      const Vec3 d = x - a2;
      csum += map.apply(x) - b2 * fit.R * d / d.squaredNorm();
    }
    fit.c = csum / static_cast<double>(n);
    fit.singular_point_in_domain = map.domain().contains(a2);
    return fit;
  }

  fit.kind = ConformalClass::NotSpherical;
  fit.residual = std::min(fit.type1_residual, fit.type2_residual);
  return fit;
}

}  // namespace diracgauge::chart
