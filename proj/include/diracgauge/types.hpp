#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace diracgauge {

using Complex = std::complex<double>;

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using CMat4 = Eigen::Matrix4cd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Four complex 4x4 matrices indexed by a spacetime or frame index.
using GammaSet = std::array<CMat4, 4>;

/// Minkowski metric diag(1,-1,-1,-1).
inline Mat4 eta() { return Eigen::Vector4d(1.0, -1.0, -1.0, -1.0).asDiagonal(); }

inline double max_abs(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs(const Eigen::Ref<const Eigen::MatrixXcd>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace diracgauge
