// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "diracgauge/dirac.hpp"
#include "oracles.hpp"

using namespace diracgauge;
using tetrad::Prescription;

namespace {

// Pinned tolerances.
constexpr double kCholeskyRel = 1e-11;
constexpr double kCoset = 1e-10;
constexpr double kAnticommutation = 1e-11;
constexpr double kLift = 1e-9;
constexpr double kDoubleCover = 1e-10;
constexpr double kFreeSpectrum = 1e-10;
constexpr double kMashhoon = 1e-8;
constexpr double kTimeDependenceSmall = 1e-8;
constexpr double kLMatch = 1e-10;
constexpr double kSpectral = 1e-7;
constexpr double kTimeDependenceLarge = 1e-2;
constexpr double kConditionLarge = 1e-3;
constexpr double kClassify = 1e-8;
constexpr double kMargin = 10.0;
constexpr double kCondition = 1e-9;
constexpr double kRatioLo = 3.4;
constexpr double kRatioHi = 4.6;
constexpr double kImag = 1e-9;

constexpr double kBudgetCholesky = 5.0;
constexpr double kBudgetFree = 2.0;
constexpr double kBudgetTheorem = 60.0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Worst imaginary part of any E eigenvalue seen while checking the other
// criteria.
double g_max_imag = 0.0;
int g_fixtures = 0;

void note_imag(double v) {
  g_max_imag = std::max(g_max_imag, v);
  ++g_fixtures;
}

dirac::Grid line(int N, double length, double x0 = 0.0) {
  dirac::Grid g;
  g.axes = 1;
  g.N = N;
  g.length = length;
  g.x0 = x0;
  return g;
}

chart::MetricField anisotropic_metric() {
  std::array<expr::Expr, 10> c;
  c[0] = expr::parse("1");
  c[4] = expr::parse("-1");
  c[7] = expr::parse("-1");
  c[9] = expr::parse("-(1 + 0.3*sin(x0))");
  return chart::MetricField::from_components(c, {}, "anisotropic");
}

chart::MetricField flrw() {
  return chart::catalog_metric("flrw_flat", {}, {{"scale_factor", "1 + 0.1*x0"}});
}

Mat3 theorem_rotation() { return lorentz::rotation3(3, 0.4) * lorentz::rotation3(1, 0.3); }

chart::SpatialMap theorem_map() {
  return chart::SpatialMap::affine(theorem_rotation(), Vec3(0.1, 0.2, 0.3));
}

struct Result {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// ---------------------------------------------------------------------------

Result cholesky() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1);
  double worst = 0.0;
  double worst_coset = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Mat4 G = oracle::random_admissible_metric(rng);
    const auto f = lorentz::eta_cholesky(G);
    worst = std::max(worst, max_abs(f.C.transpose() * eta() * f.C - G) / max_abs(G));
    const Mat4 bp = oracle::random_lorentz(rng) * f.C;
    worst_coset = std::max(worst_coset, oracle::lorentz_defect(bp * f.C.inverse()));
  }
  const double t = seconds_since(t0);
  return {worst < kCholeskyRel && worst_coset < kCoset && t < kBudgetCholesky,
          fmt("max relative residual %.2e, coset defect %.2e, %.2f s", worst, worst_coset, t)};
}

Vec4 random_point(const std::string& metric, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec4 X(u(rng), u(rng), u(rng), u(rng));
  if (metric == "schwarzschild_standard") X = Vec4(X[0], 4.0 + 1.5 * X[1], 1.57 + 1.2 * X[2], M_PI * X[3]);
  if (metric == "schwarzschild_isotropic") X.tail<3>() *= 3.0;
  return X;
}

Result anticommutation() {
  std::mt19937_64 rng(2);
  const auto flat = clifford::FlatGammaSet::dirac();
  double worst = 0.0;
  int checked = 0;
  for (const auto& entry : chart::catalog()) {
    const auto m = chart::catalog_metric(entry.name);
    std::vector<Vec4> pts;
    while (pts.size() < 100) {
      const Vec4 X = random_point(entry.name, rng);
      if (chart::check_admissible(m, X).ok && m.in_domain(X)) pts.push_back(X);
    }
    for (auto p : {Prescription::Diagonal, Prescription::Cholesky, Prescription::TimeGauge}) {
      if (p == Prescription::Diagonal && entry.name == "rotating_frame_minkowski") continue;
      const auto gf = tetrad::gamma_from_tetrad(tetrad::TetradField::prescribed(m, p), flat);
      for (const Vec4& X : pts) {
        worst = std::max(worst, clifford::check_anticommutation(gf.at(X), m.at(X).g_inv));
        ++checked;
      }
    }
  }
  return {worst < kAnticommutation,
          fmt("max residual %.2e over %.0f gamma fields at points", worst, checked)};
}

Result spin_lift() {
  std::mt19937_64 rng(3);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Mat4 L = oracle::random_lorentz(rng, 3.1);
    worst = std::max(worst, oracle::lift_defect(clifford::spin_lift(L).S, L));
  }
  const std::vector<Mat4> quarter(4, lorentz::rotation(3, M_PI / 2));
  const double cover = max_abs(clifford::spin_lift_path(quarter).S + CMat4::Identity());
  return {worst < kLift && cover < kDoubleCover,
          fmt("max lift residual %.2e, |S(2 pi) + 1| = %.2e", worst, cover)};
}

Result free_spectrum() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto m = chart::catalog_metric("minkowski");
  const auto flat = clifford::FlatGammaSet::dirac();
  const auto t = tetrad::TetradField::prescribed(m, Prescription::Diagonal);
  const auto gf = tetrad::gamma_from_tetrad(t, flat);
  const auto H = dirac::assemble_hamiltonian(gf, dirac::Connection::dfw(t, m, flat), m,
                                             line(64, 64 * 0.2), 1.0, dirac::Variant::DFW);
  const auto got = dirac::spectrum(H).real_parts();
  note_imag(dirac::spectrum(dirac::energy_operator(H)).max_imag);
  const auto ref = oracle::free_dirac_levels(64, 0.2, 1.0);
  double worst = got.size() == ref.size() ? 0.0 : 1.0;
  for (std::size_t i = 0; i < std::min(got.size(), ref.size()); ++i)
    worst = std::max(worst, std::abs(got[i] - ref[i]));
  const double secs = seconds_since(t0);
  return {worst < kFreeSpectrum && secs < kBudgetFree,
          fmt("max deviation %.2e over %.0f levels, %.2f s", worst, ref.size(), secs)};
}

Result mashhoon() {
  const double w = 0.3;
  dirac::ExperimentConfig cfg;
  cfg.second.triad_rate = w;
  cfg.grid = line(8, 8.0);
  cfg.zero_momentum = true;
  const auto r = dirac::gauge_experiment(cfg);
  note_imag(r.max_imag_E);
  const auto got = r.E2.real_parts();
  const auto ref = oracle::mashhoon_levels(1.0, w);
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(got[i] - ref[i]));
  const double shift_error = std::abs(r.spectral_distance - w / 2);
  return {worst < kMashhoon && shift_error < kMashhoon && !r.equivalent,
          fmt("level error %.2e, distance %.10f (w/2 = %.2f)", worst, r.spectral_distance, w / 2)};
}

Result theorem_constant_L() {
  const auto m = flrw();
  const auto t1 = tetrad::TetradField::prescribed(m, Prescription::Diagonal);
  const auto t2 = tetrad::TetradField::via_chart(m, theorem_map(), Prescription::Diagonal);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<Vec4> pts;
  for (int i = 0; i < 50; ++i) pts.push_back(Vec4(u(rng), u(rng), u(rng), u(rng)));
  const double dL = tetrad::time_dependence_of_L(t1, t2, pts).max_norm;
  const Mat4 expected = oracle::spatial_rotation(theorem_rotation().transpose());
  double worst = 0.0;
  for (const Vec4& X : pts)
    worst = std::max(worst, max_abs(tetrad::inter_chart_L(t1, t2, X).L - expected));
  return {dL < kTimeDependenceSmall && worst < kLMatch,
          fmt("max |d0 L| %.2e, |L - diag(1, R^-1)| %.2e", dL, worst)};
}

Result theorem_spectra() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  bool equivalent = true;
  for (auto v : {dirac::Variant::DFW, dirac::Variant::QRD0}) {
    dirac::ExperimentConfig cfg;
    cfg.metric = flrw();
    cfg.second.map = theorem_map();
    cfg.variant = v;
    cfg.grid.axes = 3;
    cfg.grid.N = 4;
    cfg.grid.length = 4.0;
    cfg.grid.x0 = 0.5;
    const auto r = dirac::gauge_experiment(cfg);
    note_imag(r.max_imag_E);
    worst = std::max(worst, r.spectral_distance);
    equivalent = equivalent && r.equivalent;
  }
  const double secs = seconds_since(t0);
  return {worst < kSpectral && equivalent && secs < kBudgetTheorem,
          fmt("max E spectral distance %.2e (DFW and QRD0), %.1f s", worst, secs)};
}

Result counterexample() {
  dirac::ExperimentConfig cfg;
  cfg.metric = anisotropic_metric();
  cfg.first.prescription = Prescription::Cholesky;
  cfg.second.prescription = Prescription::Cholesky;
  cfg.second.map = chart::SpatialMap::affine(lorentz::rotation3(1, M_PI / 6));
  cfg.grid = line(4, 4.0, 0.7);
  const auto r = dirac::gauge_experiment(cfg);
  note_imag(r.max_imag_E);
  return {r.dL_dt_max > kTimeDependenceLarge && r.conditions.dfw_hamiltonian > kConditionLarge &&
              !r.equivalent,
          fmt("max |d0 L| %.3e, |d0 S| %.3e", r.dL_dt_max, r.conditions.dfw_hamiltonian)};
}

Result classification() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  std::vector<Vec3> samples;
  for (int i = 0; i < 16; ++i) samples.push_back(Vec3(u(rng), u(rng), u(rng)));

  const auto type1 = chart::classify_conformal_map(
      chart::SpatialMap::affine(1.5 * lorentz::rotation3(3, 0.7), Vec3(0.2, -0.4, 1.0)), samples,
      kClassify);
  const auto type2 = chart::classify_conformal_map(
      chart::SpatialMap({expr::parse("2*(x1+1)/((x1+1)^2 + x2^2 + x3^2)"),
                         expr::parse("2*x2/((x1+1)^2 + x2^2 + x3^2)"),
                         expr::parse("2*x3/((x1+1)^2 + x2^2 + x3^2)")}),
      samples, kClassify);
  const auto shear = chart::classify_conformal_map(
      chart::SpatialMap({expr::parse("x1 + 0.5*x2"), expr::parse("x2"), expr::parse("x3")}),
      samples, kClassify);
  const double margin = shear.sphericity_residual / kClassify;
  const bool ok = type1.kind == chart::ConformalClass::Type1 && type1.residual < kClassify &&
                  type2.kind == chart::ConformalClass::Type2 && type2.residual < kClassify &&
                  shear.kind == chart::ConformalClass::NotSpherical && margin >= kMargin;
  return {ok, fmt("type1 %.1e, type2 %.1e, shear margin %.1e x", type1.residual, type2.residual,
                  margin)};
}

Result conditions() {
  const auto flat = clifford::FlatGammaSet::dirac();
  const Mat4 L = lorentz::rotation(2, 0.6) * lorentz::boost(1, 0.3);
  const CMat4 S0 = clifford::spin_lift(L).S;
  const auto S = [S0](const Vec4&) { return S0; };
  double worst = 0.0;
  for (const char* name : {"flrw_flat", "schwarzschild_isotropic"}) {
    const auto m = chart::catalog_metric(name);
    const auto t = tetrad::TetradField::prescribed(m, Prescription::Diagonal);
    const tetrad::TetradField moved([t, L](const Vec4& X) { return Mat4(t.a(X) * L); },
                                    "boosted");
    const auto gf = tetrad::gamma_from_tetrad(t, flat);
    dirac::Grid g = line(6, 2.0, 0.4);
    g.origin = Vec3(1.0, 0.5, 0.5);
    const auto dfw = dirac::check_H_equivalence_condition(
        S, gf, dirac::Connection::dfw(t, m, flat), g, 0.0, dirac::Connection::dfw(moved, m, flat));
    const auto qrd = dirac::check_H_equivalence_condition(S, gf, dirac::Connection::trivial(), g);
    for (const auto& r : {dfw, qrd})
      worst = std::max({worst, r.dfw_hamiltonian, r.qrd_hamiltonian, r.dfw_energy,
                        r.modified_energy});
  }
  return {worst < kCondition, fmt("max residual over four conditions %.2e", worst)};
}

Result field_energy() {
  const auto m = flrw();
  const auto flat = clifford::FlatGammaSet::dirac();
  const auto t = tetrad::TetradField::prescribed(m, Prescription::Diagonal);
  const auto gf = tetrad::gamma_from_tetrad(t, flat);
  bool ok = true;
  std::string detail;
  for (auto v : {dirac::Variant::DFW, dirac::Variant::QRD0}) {
    const auto conn = v == dirac::Variant::DFW ? dirac::Connection::dfw(t, m, flat)
                                               : dirac::Connection::trivial();
    std::vector<double> errors;
    for (int N : {16, 32, 64}) {
      const dirac::Grid g = line(N, 2 * M_PI, 0.5);
      const auto E = dirac::energy_operator(dirac::assemble_hamiltonian(gf, conn, m, g, 1.0, v));
      note_imag(dirac::spectrum(E).max_imag);
      // Lowest nonzero Fourier mode: E is translation invariant, so its
      // momentum-k block gives exact eigenvectors.
      const double k = 1.0;
      const double dx = g.spacing();
      CMat4 Ek = CMat4::Zero();
      for (int c = 0; c < N; ++c)
        Ek += E.matrix.block<4, 4>(0, 4 * c) * std::exp(Complex(0, k * c * dx));
      Eigen::ComplexEigenSolver<CMat4> es(Ek);
      int best = 0;
      for (int i = 1; i < 4; ++i)
        if (es.eigenvalues()[i].real() > es.eigenvalues()[best].real()) best = i;
      CVec psi(4 * N);
      for (int s = 0; s < N; ++s)
        psi.segment<4>(4 * s) = es.eigenvectors().col(best) * std::exp(Complex(0, k * s * dx));
      psi /= std::sqrt(E.inner(psi, psi).real());
      const auto se = dirac::stress_energy(gf, conn, m, psi, g, 1.0, v, dirac::Derivative::Spectral);
      errors.push_back(std::abs(se.field_energy - se.expectation));
    }
    const double r1 = errors[0] / errors[1];
    const double r2 = errors[1] / errors[2];
    ok = ok && r1 >= kRatioLo && r1 <= kRatioHi && r2 >= kRatioLo && r2 <= kRatioHi;
    detail += std::string(dirac::to_string(v)) + fmt(" ratios %.3f %.3f; ", r1, r2);
  }
  return {ok, detail.substr(0, detail.size() - 2)};
}

Result energy_reality() {
  return {g_fixtures > 0 && g_max_imag < kImag,
          fmt("max |imag| %.2e across %.0f E operators", g_max_imag, g_fixtures)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Result()>> criteria[] = {
      {"eta-Cholesky residual and coset", cholesky},
      {"anticommutation of prescribed gamma fields", anticommutation},
      {"spin lift fidelity and double cover", spin_lift},
      {"free Dirac spectrum", free_spectrum},
      {"rotating triad inequivalence", mashhoon},
      {"isotropic metric: constant L under rigid chart change", theorem_constant_L},
      {"isotropic metric: equivalent energy spectra", theorem_spectra},
      {"anisotropic counterexample", counterexample},
      {"conformal map classification", classification},
      {"constant S condition residuals", conditions},
      {"field energy convergence", field_energy},
      {"energy operator reality", energy_reality},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Result r;
    try {
      r = run();
    } catch (const std::exception& e) {
      r = {false, std::string("threw: ") + e.what()};
    }
    failed += r.pass ? 0 : 1;
    std::printf("%s %2d %s: %s\n", r.pass ? "PASS" : "FAIL", index, name, r.detail.c_str());
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed;
}
