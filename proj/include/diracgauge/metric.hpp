#pragma once

// Spacetime metrics in a chart, purely spatial coordinate changes, and the
// Cauchy-Green machinery that decides which spatial changes keep a metric
// space-isotropic and diagonal.

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "diracgauge/expr.hpp"
#include "diracgauge/fd.hpp"
#include "diracgauge/types.hpp"

namespace diracgauge::chart {

/// Metric data at one point. Signature (+,-,-,-).
struct MetricPoint {
  Mat4 g;
  Mat4 g_inv;
  double det = 0.0;
  double sqrt_minus_g = 0.0;
};

/// Smooth map X -> G(X) with G symmetric.
class MetricField {
 public:
  using Evaluator = std::function<Mat4(const Vec4&)>;

  /// Component order: 00 01 02 03 11 12 13 22 23 33.
  static MetricField from_components(const std::array<expr::Expr, 10>& components,
                                     const expr::Params& params = {},
                                     std::string name = "user");
  /// Wraps an arbitrary evaluator; the result is symmetrized.
  static MetricField from_function(Evaluator f, std::string name);

  const std::string& name() const { return impl_->name; }

  /// Raw symmetric component matrix.
  Mat4 components(const Vec4& X) const;

  /// Components plus inverse and determinant; throws SingularMetric.
  MetricPoint at(const Vec4& X) const;

  /// d G / d x^mu.
  Mat4 partial(const Vec4& X, int mu, const fd::Options& opts = {}) const;

  /// Optional admissibility-domain predicate attached by the catalog.
  MetricField with_domain(std::function<bool(const Vec4&)> in_domain,
                          std::string description) const;
  bool in_domain(const Vec4& X) const;
  const std::string& domain_description() const { return impl_->domain_description; }

 private:
  struct Impl {
    std::string name;
    Evaluator eval;
    std::function<bool(const Vec4&)> in_domain;
    std::string domain_description;
  };
  explicit MetricField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// metric_at: components, inverse, determinant.
inline MetricPoint metric_at(const MetricField& m, const Vec4& X) { return m.at(X); }

struct AdmissibilityReport {
  bool ok = false;
  double g00 = 0.0;
  Vec3 spatial_eigenvalues = Vec3::Zero();
  bool in_domain = true;
};

/// ok iff g00 > 0 and every eigenvalue of (g_jk) is below -1e-12.
AdmissibilityReport check_admissible(const MetricField& m, const Vec4& X);
AdmissibilityReport check_admissible(const Mat4& g);

struct IsotropyReport {
  bool ok = false;
  std::vector<double> f_values;
  std::vector<double> h_values;
};

/// Checks G = diag(f,-h,-h,-h), f>0, h>0 at every sample.
IsotropyReport is_space_isotropic_diagonal(const MetricField& m,
                                           const std::vector<Vec4>& samples);

/// Gamma^lambda_{mu nu} stored as christoffel[lambda](mu, nu).
using Christoffel = std::array<Mat4, 4>;

/// Levi-Civita connection coefficients; exactly symmetric in (mu, nu).
Christoffel christoffel(const MetricField& m, const Vec4& X, const fd::Options& opts = {});

// ---------------------------------------------------------------------------
// Purely spatial coordinate changes x'^j = phi^j(x^k)

struct Domain {
  bool all_space = true;
  Vec3 lo = Vec3::Zero();
  Vec3 hi = Vec3::Zero();

  static Domain everywhere() { return {}; }
  static Domain box(const Vec3& lo, const Vec3& hi) { return {false, lo, hi}; }
  bool contains(const Vec3& x) const;
};

class SpatialMap {
 public:
  /// Throws InvalidArgument if any component depends on x0.
  SpatialMap(std::array<expr::Expr, 3> forward, expr::Params params = {},
             Domain domain = Domain::everywhere());

  static SpatialMap identity();
  /// x' = A x + c.
  static SpatialMap affine(const Mat3& A, const Vec3& c = Vec3::Zero());

  /// Attaches the inverse map x = psi(x'); not checked beyond the x0 rule.
  SpatialMap with_inverse(std::array<expr::Expr, 3> inverse) const;

  Vec3 apply(const Vec3& x) const;
  /// True when the components are literally x1, x2, x3.
  bool is_identity() const;
  bool has_inverse() const { return inverse_.has_value(); }
  Vec3 apply_inverse(const Vec3& xp) const;

  /// F^j_k = d phi^j / d x^k.
  Mat3 jacobian(const Vec3& x, const fd::Options& opts = {}) const;

  const std::array<expr::Expr, 3>& components() const { return forward_; }
  const Domain& domain() const { return domain_; }
  const expr::Params& params() const { return params_; }

 private:
  std::array<expr::Expr, 3> forward_;
  std::optional<std::array<expr::Expr, 3>> inverse_;
  expr::Params params_;
  Domain domain_;
};

struct ChartJacobian {
  /// P^mu_nu = d x^mu / d x'^nu = diag(1, F^{-1}).
  Mat4 P;
  Mat3 F;
};

/// Throws SingularJacobian when F is singular.
ChartJacobian jacobian_P(const SpatialMap& map, const Vec3& x, const fd::Options& opts = {});

/// Right Cauchy-Green tensor F^T F.
Mat3 cauchy_green(const SpatialMap& map, const Vec3& x, const fd::Options& opts = {});

struct PushedMetric {
  Vec4 X_prime;
  Mat4 g_prime;
  Mat4 P;
};

/// Metric of the new chart at the image X' = (x0, phi(x)) of the source point X:
/// G' = P^T G(X) P.
PushedMetric pushforward_metric(const MetricField& m, const SpatialMap& map, const Vec4& X,
                                const fd::Options& opts = {});

/// Metric field expressed in the new chart; needs the inverse map to locate
/// source points.
MetricField pulled_to_chart(const MetricField& m, const SpatialMap& map,
                            const fd::Options& opts = {});

// ---------------------------------------------------------------------------
// Classification of maps with spherical Cauchy-Green tensor

enum class ConformalClass { NotSpherical, Type1, Type2 };
const char* to_string(ConformalClass c);

struct ConformalFit {
  ConformalClass kind = ConformalClass::NotSpherical;
  /// Residual of the selected model (sphericity residual when NotSpherical).
  double residual = 0.0;
  /// max over samples of |C - (tr C / 3) I|_max / (tr C / 3).
  double sphericity_residual = 0.0;
  double type1_residual = 0.0;
  double type2_residual = 0.0;
  double tolerance = 0.0;
  // Type1: phi(x) = c + alpha0 R x. Type2: phi(x) = c + b R (x-a)/|x-a|^2.
  double alpha0 = 0.0;
  double b = 0.0;
  Vec3 a = Vec3::Zero();
  Mat3 R = Mat3::Identity();
  Vec3 c = Vec3::Zero();
  /// Type2 only: whether the singular point a lies in the map's declared domain.
  bool singular_point_in_domain = false;
};

/// Needs at least 8 samples; throws InvalidArgument otherwise.
ConformalFit classify_conformal_map(const SpatialMap& map, const std::vector<Vec3>& samples,
                                    double tol = 1e-8, const fd::Options& opts = {});

// ---------------------------------------------------------------------------
// Catalog

struct CatalogEntry {
  std::string name;
  std::string description;
  /// Numeric parameters with defaults.
  expr::Params defaults;
  /// Expression-valued parameters with defaults (e.g. the FLRW scale factor).
  std::map<std::string, std::string> expression_defaults;
  std::string domain;
};

const std::vector<CatalogEntry>& catalog();

/// Builds a catalog metric. Unknown names or parameters throw InvalidArgument.
MetricField catalog_metric(const std::string& name, const expr::Params& params = {},
                           const std::map<std::string, std::string>& expressions = {});

}  // namespace diracgauge::chart
