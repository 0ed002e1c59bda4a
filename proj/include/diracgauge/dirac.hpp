#pragma once

// Discrete Dirac Hamiltonian and energy operators on a periodic spatial grid,
// the gauge-equivalence conditions, the canonical stress-energy tensor and
// the end-to-end gauge experiment.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diracgauge/clifford.hpp"
#include "diracgauge/metric.hpp"
#include "diracgauge/tetrad.hpp"

namespace diracgauge::dirac {

/// Periodic box. With axes == 1 the fields are sampled along x1 only and
/// Psi is taken constant in x2, x3 (the zero-transverse-momentum sector).
struct Grid {
  int axes = 3;
  int N = 4;
  double length = 1.0;
  double x0 = 0.0;
  Vec3 origin = Vec3::Zero();

  double spacing() const { return length / N; }
  int sites() const;
  /// Spacing to the power of the number of axes: the volume element.
  double cell_volume() const;
  Vec4 point(int site) const;
  /// Site index shifted by +-1 along an active axis (0-based), wrapping.
  int neighbor(int site, int axis, int step) const;
  /// Throws InvalidArgument unless axes is 1 or 3, N >= 4 and length > 0.
  void validate() const;
};

enum class Variant { DFW, QRD0 };
const char* to_string(Variant v);
Variant parse_variant(std::string_view name);

using ConnectionSet = std::array<CMat4, 4>;

struct SpinConnection {
  ConnectionSet gamma;
  /// max over mu, nu of |d_mu g^nu + Chr^nu_{mu l} g^l + [G_mu, g^nu]|.
  double compatibility_residual = 0.0;
};

/// G_mu = 1/4 w_{ab mu} g^a g^b with w^a_{b mu} = b^a_nu (d_mu a^nu_b +
/// Chr^nu_{mu l} a^l_b). Throws CompatibilityResidualExceeded above tol.
SpinConnection dfw_spin_connection(const tetrad::TetradField& t, const chart::MetricField& m,
                                   const clifford::FlatGammaSet& flat, const Vec4& X,
                                   const fd::Options& opts = {}, double tol = 1e-6);

class Connection {
 public:
  enum class Kind { Trivial, Dfw };
  using Evaluator = std::function<ConnectionSet(const Vec4&)>;

  static Connection trivial();
  static Connection dfw(const tetrad::TetradField& t, const chart::MetricField& m,
                        const clifford::FlatGammaSet& flat, const fd::Options& opts = {},
                        double tol = 1e-6);

  Kind kind() const { return kind_; }
  ConnectionSet at(const Vec4& X) const { return eval_(X); }

 private:
  Connection(Kind kind, Evaluator eval) : kind_(kind), eval_(std::move(eval)) {}
  Kind kind_;
  Evaluator eval_;
};

enum class Tag { H_DFW, H_QRD0, E };
const char* to_string(Tag t);

/// Square operator on spinor grid functions (4 components per site, site
/// major) together with the per-site blocks of the Gram matrix
/// M = A gamma^0 sqrt(-g) dV.
struct DiscreteOperator {
  CMat matrix;
  std::vector<CMat4> gram;
  Tag tag = Tag::H_DFW;

  int dimension() const { return static_cast<int>(matrix.rows()); }
  CMat gram_dense() const;
  /// Psi^dagger M Phi.
  Complex inner(const CVec& psi, const CVec& phi) const;
};

/// Spatial derivative stencil. Central differences are what the Hamiltonian
/// uses; the spectral derivative is exact on the grid's Fourier modes.
enum class Derivative { Central, Spectral };

/// H = (g^0)^{-1} [-i g^j (d_j + G_j) + m - i Q] - i G_0, where Q = 0 for DFW
/// and Q = 1/2 A^{-1} D_mu (A g^mu) for QRD0. d_j is the central difference
/// on the periodic grid. Throws SingularMatrix when g^0 is singular at a site.
DiscreteOperator assemble_hamiltonian(const tetrad::GammaField& gf, const Connection& conn,
                                      const chart::MetricField& m, const Grid& grid,
                                      double mass, Variant variant,
                                      const fd::Options& opts = {});

/// E = 1/2 (H + M^{-1} H^dagger M). Throws NotPositiveDefinite when the Gram
/// matrix is not, and NumericalError when M E misses hermiticity by 1e-10.
DiscreteOperator energy_operator(const DiscreteOperator& H);

/// S^{-1} op S for a block-diagonal S (one 4x4 block per site); the Gram
/// blocks become S^dagger M S.
DiscreteOperator conjugate(const DiscreteOperator& op, const std::vector<CMat4>& S);

struct Spectrum {
  /// Sorted by real part, then imaginary part.
  std::vector<Complex> values;
  double max_imag = 0.0;

  std::vector<double> real_parts() const;
};

constexpr int kDefaultDimensionCap = 8192;

/// Dense eigenvalues. Throws DimensionCap above the cap.
Spectrum spectrum(const DiscreteOperator& op, int cap = kDefaultDimensionCap);
Spectrum spectrum(const CMat& matrix, int cap = kDefaultDimensionCap);

/// Max absolute difference of two sorted spectra of equal length.
double spectral_distance(const Spectrum& a, const Spectrum& b);

/// Restriction of op to spatially uniform spinors: (1/n) sum over all site
/// pairs of the 4x4 blocks.
CMat4 zero_momentum_block(const DiscreteOperator& op);

struct ConditionReport {
  /// max |d_0 S|.
  double dfw_hamiltonian = 0.0;
  /// max |B^0 (d_0 S) S^{-1} - [B^mu (D_mu S) S^{-1}]^a|.
  double qrd_hamiltonian = 0.0;
  /// Same with the antihermitian part also taken on the left.
  double qrd_hamiltonian_antiherm = 0.0;
  /// max |[B^0 (d_0 S) S^{-1}]^a|.
  double dfw_energy = 0.0;
  /// max |[B^mu (D_mu S) S^{-1} - B^0 (d_0 S) S^{-1}]^a|.
  double modified_energy = 0.0;
  /// max |d_j S| over spatial axes, for reference.
  double spatial_variation = 0.0;
};

/// Evaluates the four equivalence conditions at every grid site for the
/// gauge transformation gamma -> S^{-1} gamma S. B^mu = A gamma^mu of gf,
/// and D_mu S = d_mu S + G_mu S - S G~_mu with G the connection of the first
/// operator and G~ that of the transformed one (the same connection when
/// omitted, which is the fixed-connection case).
ConditionReport check_H_equivalence_condition(
    const std::function<CMat4(const Vec4&)>& S, const tetrad::GammaField& gf,
    const Connection& conn, const Grid& grid, double time_step = 0.0,
    const std::optional<Connection>& transformed_conn = std::nullopt,
    const fd::Options& opts = {});

struct StressEnergy {
  /// t^mu_nu per site (real).
  std::vector<Mat4> t;
  /// Lagrangian per site.
  std::vector<double> lagrangian;
  /// sum of t^0_0 sqrt(-g) dV.
  double field_energy = 0.0;
  /// (Psi | E Psi).
  double expectation = 0.0;
};

/// Canonical tensor t^mu_nu = i/2 [Psi^+ B^mu d_nu Psi - (d_nu Psi)^+ B^mu Psi]
/// - delta^mu_nu L with d_0 Psi = -i H Psi and spatial derivatives from the
/// chosen stencil.
StressEnergy stress_energy(const tetrad::GammaField& gf, const Connection& conn,
                           const chart::MetricField& m, const CVec& psi, const Grid& grid,
                           double mass, Variant variant,
                           Derivative scheme = Derivative::Central,
                           const fd::Options& opts = {});

// ---------------------------------------------------------------------------
// Gauge experiment

/// One way of building a tetrad: a prescription applied in the chart
/// x' = phi(x), optionally with the spatial triad turning about x3.
struct GaugeChoice {
  chart::SpatialMap map = chart::SpatialMap::identity();
  tetrad::Prescription prescription = tetrad::Prescription::Diagonal;
  double triad_rate = 0.0;
};

/// Tetrad field for a gauge choice, expressed in the source chart.
tetrad::TetradField gauge_tetrad(const chart::MetricField& m, const GaugeChoice& c,
                                 const fd::Options& opts = {});

struct ExperimentConfig {
  chart::MetricField metric = chart::catalog_metric("minkowski");
  GaugeChoice first;
  GaugeChoice second;
  Variant variant = Variant::DFW;
  Grid grid;
  double mass = 1.0;
  std::string representation = "dirac";
  /// Compare only the spatially uniform sector.
  bool zero_momentum = false;
  /// Step for time derivatives of L and S; <= 0 uses the default policy.
  double time_step = 0.0;
  double spectral_tol = 1e-7;
  double condition_tol = 1e-9;
  double time_dependence_tol = 1e-8;
  double compatibility_tol = 1e-6;
  fd::Options fd;
};

struct ExperimentReport {
  bool admissible = true;
  bool isotropic = false;
  double anticommutation_residual = 0.0;
  double lorentz_residual = 0.0;
  Mat4 L_first_site = Mat4::Identity();
  double dL_dt_max = 0.0;
  double lift_residual = 0.0;
  ConditionReport conditions;
  double compatibility_residual = 0.0;
  Spectrum E1;
  Spectrum E2;
  Spectrum H1;
  Spectrum H2;
  double spectral_distance = 0.0;
  double hamiltonian_spectral_distance = 0.0;
  /// |E2 - S^{-1} E1 S|_max with S block-diagonal from the lift.
  double operator_distance = 0.0;
  double max_imag_E = 0.0;
  bool equivalent = false;
  std::vector<std::string> reasons;
  /// Set when the operator stage failed; the fields before it stay valid.
  std::string failure;
};

ExperimentReport gauge_experiment(const ExperimentConfig& cfg);

}  // namespace diracgauge::dirac
