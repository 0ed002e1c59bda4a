#pragma once

// Orthonormal tetrads a (columns u_alpha, a^T G a = eta), the gamma fields
// they induce, and the local Lorentz transformation between two tetrads.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "diracgauge/clifford.hpp"
#include "diracgauge/lorentz.hpp"
#include "diracgauge/metric.hpp"

namespace diracgauge::tetrad {

enum class Prescription { Diagonal, Cholesky, TimeGauge };
const char* to_string(Prescription p);
/// "diagonal", "cholesky" or "time_gauge"; InvalidArgument otherwise.
Prescription parse_prescription(std::string_view name);

/// diag(1/sqrt|d_mu|). NotDiagonal if an off-diagonal entry exceeds 1e-12.
Mat4 diagonal_tetrad(const Mat4& G);
/// Inverse of the eta-Cholesky factor; lower triangular, positive diagonal.
Mat4 cholesky_tetrad(const Mat4& G);
/// a^0_p = 0 and spatial block h^{-1/2}, h = -(g_jk); column 0 from
/// orthonormality with a^0_0 > 0.
Mat4 time_gauge_tetrad(const Mat4& G);

/// All three throw NotAdmissible for a non-admissible G.
Mat4 prescribed_tetrad(Prescription p, const Mat4& G);

/// max |a^T G a - eta|.
double orthonormality_residual(const Mat4& a, const Mat4& G);

/// X -> a(X) in a fixed chart.
class TetradField {
 public:
  using Evaluator = std::function<Mat4(const Vec4&)>;

  TetradField(Evaluator eval, std::string description);

  /// Prescription applied to the metric at each point.
  static TetradField prescribed(const chart::MetricField& m, Prescription p);

  /// Tetrad built by the prescription in the chart x' = phi(x) and
  /// expressed back in the source chart: a(X) = P(X) a'(X'), where a' uses
  /// G' = P^T G(X) P.
  static TetradField via_chart(const chart::MetricField& m, const chart::SpatialMap& map,
                               Prescription p, const fd::Options& opts = {});

  /// a(X) R(rate x0): the spatial triad turns about x3 at the given rate.
  TetradField rotating(double rate) const;

  Mat4 a(const Vec4& X) const { return eval_(X); }
  Mat4 b(const Vec4& X) const { return a(X).inverse(); }
  Mat4 partial(const Vec4& X, int mu, const fd::Options& opts = {}) const;
  const std::string& description() const { return description_; }

 private:
  Evaluator eval_;
  std::string description_;
};

/// L = b P a'.
lorentz::LorentzMatrix inter_chart_L(const Mat4& a, const Mat4& P, const Mat4& a_prime);

/// L = b_1(X) a_2(X) for two tetrads expressed in the same chart.
lorentz::LorentzMatrix inter_chart_L(const TetradField& t1, const TetradField& t2,
                                     const Vec4& X);

struct TimeDependence {
  double max_norm = 0.0;
  std::vector<Mat4> per_point;
};

/// Central difference in x0 of L = b_1 a_2 at each sample; max-abs norms.
TimeDependence time_dependence_of_L(const TetradField& t1, const TetradField& t2,
                                    const std::vector<Vec4>& samples, double time_step = 0.0);

/// gamma^mu(X) together with the hermitizing matrix A(X).
class GammaField {
 public:
  using GammaEvaluator = std::function<GammaSet(const Vec4&)>;
  using MatrixEvaluator = std::function<CMat4(const Vec4&)>;

  GammaField(GammaEvaluator gammas, MatrixEvaluator hermitizer, clifford::FlatGammaSet flat);

  GammaSet at(const Vec4& X) const { return gammas_(X); }
  CMat4 hermitizer(const Vec4& X) const { return hermitizer_(X); }
  const clifford::FlatGammaSet& flat() const { return flat_; }

  /// d gamma^mu / d x^nu for all mu.
  GammaSet partial(const Vec4& X, int nu, const fd::Options& opts = {}) const;

  /// gamma -> S^{-1} gamma S, A -> S^dagger A S with a point-dependent S.
  GammaField transformed(MatrixEvaluator S) const;

 private:
  GammaEvaluator gammas_;
  MatrixEvaluator hermitizer_;
  clifford::FlatGammaSet flat_;
};

/// gamma^mu = a^mu_alpha gamma_flat^alpha. For a real tetrad the flat
/// hermitizer also hermitizes every gamma^mu, so A is constant.
GammaField gamma_from_tetrad(const TetradField& t, const clifford::FlatGammaSet& flat);

/// zeta^mu = (d x'^mu / d x^nu) gamma^nu(X) for x' = phi(x).
GammaSet transport_gamma(const GammaField& gf, const chart::SpatialMap& map, const Vec4& X,
                         const fd::Options& opts = {});

}  // namespace diracgauge::tetrad
