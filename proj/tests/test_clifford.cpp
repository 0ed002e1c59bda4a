#include <doctest.h>

#include <random>

#include "diracgauge/clifford.hpp"
#include "diracgauge/lorentz.hpp"
#include "oracles.hpp"

using namespace diracgauge;
using clifford::FlatGammaSet;

namespace {

CMat4 anticommutator(const CMat4& a, const CMat4& b) { return a * b + b * a; }

}  // namespace

TEST_CASE("built-in representations satisfy the flat relation exactly") {
  for (const auto& flat : {FlatGammaSet::dirac(), FlatGammaSet::chiral()}) {
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        CHECK(max_abs(anticommutator(flat[a], flat[b]) -
                      2.0 * eta()(a, b) * CMat4::Identity()) == 0.0);
  }
  const GammaSet textbook = oracle::dirac_gammas();
  for (int a = 0; a < 4; ++a) CHECK(max_abs(FlatGammaSet::dirac()[a] - textbook[a]) == 0.0);
  CHECK_THROWS_AS(clifford::flat_gammas("majorana"), UnknownRepresentation);
}

TEST_CASE("custom representations are validated") {
  GammaSet g = oracle::dirac_gammas();
  CHECK(FlatGammaSet::custom(g).representation() == clifford::Representation::Custom);
  g[2] *= 1.001;
  CHECK_THROWS_AS(FlatGammaSet::custom(g), InvalidArgument);
}

TEST_CASE("deformed gammas anticommute to the inverse metric") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const Mat4 G = oracle::random_admissible_metric(rng);
    const Mat4 a = lorentz::eta_cholesky(G).C.inverse();
    const GammaSet g = clifford::deform(FlatGammaSet::dirac(), a);
    CHECK(clifford::check_anticommutation(g, G.inverse()) < 1e-11);
    CHECK(clifford::check_anticommutation(g, G) > 1e-3);
  }
}

TEST_CASE("hermitizing matrix") {
  std::mt19937_64 rng(6);
  for (const auto& flat : {FlatGammaSet::dirac(), FlatGammaSet::chiral()}) {
    const Mat4 G = oracle::random_admissible_metric(rng);
    const GammaSet g = clifford::deform(flat, lorentz::eta_cholesky(G).C.inverse());
    const CMat4 A = clifford::hermitizing_matrix(g);
    CHECK(max_abs(A - A.adjoint()) < 1e-12);
    CHECK(std::abs(A.determinant()) == doctest::Approx(1.0).epsilon(1e-12));
    for (int mu = 0; mu < 4; ++mu) {
      const CMat4 B = A * g[mu];
      CHECK(max_abs(B - B.adjoint()) < 1e-12);
    }
    Eigen::SelfAdjointEigenSolver<CMat4> es(A * g[0]);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
  GammaSet degenerate;
  for (auto& m : degenerate) m = CMat4::Identity();
  CHECK_THROWS_AS(clifford::hermitizing_matrix(degenerate), NoHermitizer);
}

TEST_CASE("similarity transformations keep the algebra and hermiticity") {
  const Complex i(0, 1);
  CMat4 S = CMat4::Identity();
  S(0, 1) = 0.3 + 0.2 * i;
  S(2, 3) = -0.5;
  S(3, 0) = 0.1 * i;
  const GammaSet g = FlatGammaSet::dirac().matrices();
  const auto t = clifford::apply_similarity(g, clifford::hermitizing_matrix(g), S);
  CHECK(clifford::check_anticommutation(t.gammas, eta()) < 1e-12);
  for (int mu = 0; mu < 4; ++mu) {
    const CMat4 B = t.A * t.gammas[mu];
    CHECK(max_abs(B - B.adjoint()) < 1e-12);
  }
  CHECK_THROWS_AS(clifford::apply_similarity(g, CMat4::Identity(), CMat4::Zero()),
                  SingularMatrix);
}

TEST_CASE("spin lift fidelity against textbook matrices") {
  std::mt19937_64 rng(10);
  for (int k = 0; k < 200; ++k) {
    const Mat4 L = oracle::random_lorentz(rng);
    const auto s = clifford::spin_lift(L);
    CHECK(oracle::lift_defect(s.S, L) < 1e-9);
    CHECK(s.residual < 1e-9);
  }
  CHECK(max_abs(clifford::spin_lift(Mat4::Identity()).S - CMat4::Identity()) < 1e-15);
  CHECK_THROWS_AS(clifford::spin_lift(lorentz::rotation(1, M_PI)), BranchFailure);
}

TEST_CASE("spin lift is a homomorphism up to sign") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 100; ++k) {
    const Mat4 L1 = oracle::random_lorentz(rng, 1.2, 0.6);
    const Mat4 L2 = oracle::random_lorentz(rng, 1.2, 0.6);
    const CMat4 product = clifford::spin_lift(L1).S * clifford::spin_lift(L2).S;
    const CMat4 direct = clifford::spin_lift_path({L1, L2}).S;
    CHECK(max_abs(direct - product) < 1e-10);
    CHECK(oracle::lift_defect(product, L1 * L2) < 1e-10);
  }
}

TEST_CASE("lift does not depend on the representation beyond similarity") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 100; ++k) {
    const Mat4 L = oracle::random_lorentz(rng);
    const auto d = clifford::spin_lift(L, FlatGammaSet::dirac());
    const auto c = clifford::spin_lift(L, FlatGammaSet::chiral());
    CHECK(c.residual < 1e-10);
    CHECK(std::abs(d.S.trace() - c.S.trace()) < 1e-10);
    CHECK(std::abs(d.S.determinant() - 1.0) < 1e-10);
  }
}

TEST_CASE("double cover") {
  std::vector<Mat4> quarter(4, lorentz::rotation(3, M_PI / 2));
  const auto full = clifford::spin_lift_path(quarter);
  CHECK(max_abs(full.S + CMat4::Identity()) < 1e-10);
  std::vector<Mat4> twice(8, lorentz::rotation(3, M_PI / 2));
  CHECK(max_abs(clifford::spin_lift_path(twice).S - CMat4::Identity()) < 1e-10);
}

TEST_CASE("hermitian and antihermitian parts") {
  const CMat4 M = CMat4::Random();
  const auto p = clifford::herm_antiherm_parts(M);
  CHECK(max_abs(p.herm + p.antiherm - M) < 1e-15);
  CHECK(max_abs(p.herm - p.herm.adjoint()) < 1e-15);
  CHECK(max_abs(p.antiherm + p.antiherm.adjoint()) < 1e-15);
}
