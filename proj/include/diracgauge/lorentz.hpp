#pragma once

// Lorentz-group numerics for signature (+,-,-,-).

#include "diracgauge/error.hpp"
#include "diracgauge/types.hpp"

namespace diracgauge::lorentz {

/// Lower-triangular C with positive diagonal and C^T eta C = G.
struct EtaCholesky {
  Mat4 C;
  Mat4 G;
  /// max |C^T eta C - G|.
  double residual = 0.0;
};

/// Throws NotAdmissible when a pivot is not positive.
EtaCholesky eta_cholesky(const Mat4& G);

struct LorentzCheck {
  bool ok = false;
  bool proper = false;
  bool orthochronous = false;
  /// max |L^T eta L - eta|.
  double residual = 0.0;
};

LorentzCheck is_lorentz(const Mat4& L, double tol = 1e-10);

struct LorentzMatrix {
  Mat4 L;
  LorentzCheck check;
};

/// L = b C^{-1}. Throws NotASquareRoot unless b^T eta b = G within 1e-10 |G|.
LorentzMatrix square_root_coset(const Mat4& b, const Mat4& G);

/// Generator omega in so(1,3) with exp(omega) = L. Rejects rotations by pi
/// (BranchFailure) and matrices that are not proper orthochronous Lorentz
/// (InvalidArgument).
Mat4 lorentz_log(const Mat4& L);
Mat4 lorentz_exp(const Mat4& omega);

/// Rotation of the spatial axes: rotation(3, t) turns x1 towards x2.
Mat4 rotation(int axis, double angle);
Mat3 rotation3(int axis, double angle);
/// Boost along spatial axis 1..3 with the given rapidity.
Mat4 boost(int axis, double rapidity);
/// diag(1, R).
Mat4 spatial(const Mat3& R);

/// Symmetric positive square root. Throws NotPositiveDefinite.
Mat3 sym_sqrt3(const Mat3& h);

struct Polar {
  Mat3 U;
  Mat3 R;
};

/// Q = U R with U symmetric positive definite and R orthogonal. Throws
/// SingularMatrix when det Q = 0.
Polar polar_decompose3(const Mat3& Q);

}  // namespace diracgauge::lorentz
