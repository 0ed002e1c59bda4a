#include <doctest.h>

#include <cmath>

#include "diracgauge/lorentz.hpp"
#include "diracgauge/metric.hpp"
#include "oracles.hpp"

using namespace diracgauge;
using chart::SpatialMap;

namespace {

std::vector<Vec3> box_samples(const Vec3& lo, const Vec3& hi, int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vec3> out;
  for (int i = 0; i < count; ++i)
    out.push_back(lo + (hi - lo).cwiseProduct(Vec3(u(rng), u(rng), u(rng))));
  return out;
}

SpatialMap map_of(const std::string& a, const std::string& b, const std::string& c) {
  return SpatialMap({expr::parse(a), expr::parse(b), expr::parse(c)});
}

}  // namespace

TEST_CASE("catalog metrics at representative points") {
  const Vec4 X(0.5, 0.3, -0.2, 0.4);
  const Mat4 mink = chart::catalog_metric("minkowski").components(X);
  CHECK(max_abs(mink - eta()) == 0.0);

  const auto flrw = chart::catalog_metric("flrw_flat", {}, {{"scale_factor", "x0"}});
  const Mat4 g = flrw.components(Vec4(2, 0, 0, 0));
  CHECK(g(0, 0) == 1.0);
  CHECK(g(1, 1) == -4.0);
  CHECK(g(3, 3) == -4.0);

  const auto rot = chart::catalog_metric("rotating_frame_minkowski", {{"omega", 0.2}});
  const Mat4 gr = rot.components(X);
  CHECK(gr(0, 0) == doctest::Approx(1 - 0.04 * (0.09 + 0.04)));
  CHECK(gr(0, 1) == doctest::Approx(0.2 * -0.2));
  CHECK(gr(2, 0) == doctest::Approx(-0.2 * 0.3));

  CHECK_THROWS_AS(chart::catalog_metric("kerr"), InvalidArgument);
  CHECK_THROWS_AS(chart::catalog_metric("minkowski", {{"m", 1.0}}), InvalidArgument);
}

TEST_CASE("admissibility") {
  const auto schw = chart::catalog_metric("schwarzschild_standard");
  CHECK(chart::check_admissible(schw, Vec4(0, 3.0, 1.0, 0.5)).ok);
  const auto inside = chart::check_admissible(schw, Vec4(0, 1.0, 1.0, 0.5));
  CHECK_FALSE(inside.ok);
  CHECK(inside.g00 < 0.0);
  CHECK_FALSE(chart::check_admissible(chart::catalog_metric("rotating_frame_minkowski",
                                                            {{"omega", 1.0}}),
                                      Vec4(0, 2.0, 0, 0))
                  .ok);
  Mat4 bad = eta();
  bad(1, 1) = 0.5;
  CHECK_FALSE(chart::check_admissible(bad).ok);
}

TEST_CASE("space-isotropic diagonal form") {
  const std::vector<Vec4> pts{{0.1, 1.0, 2.0, 0.5}, {0.7, 2.0, 1.0, 1.0}};
  CHECK(chart::is_space_isotropic_diagonal(chart::catalog_metric("flrw_flat"), pts).ok);
  CHECK(chart::is_space_isotropic_diagonal(chart::catalog_metric("schwarzschild_isotropic"), pts)
            .ok);
  CHECK_FALSE(
      chart::is_space_isotropic_diagonal(chart::catalog_metric("schwarzschild_standard"),
                                         {{0, 3.0, 1.0, 0.5}})
          .ok);
  CHECK_FALSE(
      chart::is_space_isotropic_diagonal(chart::catalog_metric("rotating_frame_minkowski"), pts)
          .ok);
}

TEST_CASE("Christoffel symbols of FLRW") {
  const auto m = chart::catalog_metric("flrw_flat", {}, {{"scale_factor", "1 + 0.1*x0"}});
  const Vec4 X(0.8, 0.1, 0.2, 0.3);
  const auto chr = chart::christoffel(m, X);
  const auto ref = oracle::flrw_christoffel(1.08, 0.1);
  for (int l = 0; l < 4; ++l) {
    CHECK(max_abs(chr[l] - ref[l]) < 1e-9);
    CHECK(max_abs(chr[l] - chr[l].transpose()) == 0.0);
  }
}

TEST_CASE("user metric from components") {
  std::array<expr::Expr, 10> c;
  c[0] = expr::parse("1");
  c[4] = expr::parse("-1");
  c[7] = expr::parse("-1");
  c[9] = expr::parse("-(1 + eps*sin(x0))");
  const auto m = chart::MetricField::from_components(c, {{"eps", 0.3}});
  CHECK(m.components(Vec4(M_PI / 2, 0, 0, 0))(3, 3) == doctest::Approx(-1.3));
  CHECK(m.at(Vec4::Zero()).sqrt_minus_g == doctest::Approx(1.0));
}

TEST_CASE("pushforward and Cauchy-Green under spatial maps") {
  const auto m = chart::catalog_metric("flrw_flat");
  const Mat3 R = lorentz::rotation3(1, 0.4) * lorentz::rotation3(3, 0.2);
  const SpatialMap phi = SpatialMap::affine(2.0 * R, Vec3(0.1, 0.2, 0.3));
  const Vec4 X(0.5, 0.3, 0.1, -0.2);
  const auto pushed = chart::pushforward_metric(m, phi, X);
  CHECK(max_abs(pushed.X_prime.tail<3>() - (2.0 * R * X.tail<3>() + Vec3(0.1, 0.2, 0.3))) <
        1e-14);
  const Mat4 P = pushed.P;
  CHECK(max_abs(P.block<3, 3>(1, 1) - 0.5 * R.transpose()) < 1e-9);
  CHECK(max_abs(pushed.g_prime - P.transpose() * m.components(X) * P) < 1e-14);
  CHECK(max_abs(chart::cauchy_green(phi, X.tail<3>()) - 4.0 * Mat3::Identity()) < 1e-9);

  CHECK_THROWS_AS(map_of("x1 + x0", "x2", "x3"), InvalidArgument);
  CHECK_THROWS_AS(chart::jacobian_P(map_of("x1", "x1", "x3"), Vec3(1, 2, 3)), SingularJacobian);
  CHECK(map_of("x1", "x2", "x3").is_identity());
}

TEST_CASE("metric pulled into a new chart") {
  const auto m = chart::catalog_metric("schwarzschild_isotropic");
  const SpatialMap phi =
      SpatialMap::affine(lorentz::rotation3(2, 0.3), Vec3(1, 0, 0))
          .with_inverse({expr::parse("cos(0.3)*(x1-1) - sin(0.3)*x3"), expr::parse("x2"),
                         expr::parse("sin(0.3)*(x1-1) + cos(0.3)*x3")});
  const auto pulled = chart::pulled_to_chart(m, phi);
  const Vec4 X(0, 2.0, 1.0, 0.5);
  const auto pushed = chart::pushforward_metric(m, phi, X);
  CHECK(max_abs(pulled.components(pushed.X_prime) - pushed.g_prime) < 1e-9);
}

TEST_CASE("spherical Cauchy-Green classification") {
  const auto samples = box_samples(Vec3(0.5, 0.5, 0.5), Vec3(1.5, 1.5, 1.5), 16, 3);

  SUBCASE("rotation with shift and scale is type 1") {
    const Mat3 R = lorentz::rotation3(3, 0.7) * lorentz::rotation3(1, -0.3);
    const auto fit = chart::classify_conformal_map(
        SpatialMap::affine(1.5 * R, Vec3(0.2, -0.4, 1.0)), samples);
    CHECK(fit.kind == chart::ConformalClass::Type1);
    CHECK(fit.residual < 1e-8);
    CHECK(fit.alpha0 == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(max_abs(fit.R - R) < 1e-8);
    CHECK(max_abs(fit.c - Vec3(0.2, -0.4, 1.0)) < 1e-8);
  }

  SUBCASE("inversion about a point is type 2") {
    const SpatialMap inv(
        {expr::parse("2*(x1+1)/((x1+1)^2 + x2^2 + (x3-0.5)^2)"),
         expr::parse("2*x2/((x1+1)^2 + x2^2 + (x3-0.5)^2)"),
         expr::parse("2*(x3-0.5)/((x1+1)^2 + x2^2 + (x3-0.5)^2)")},
        {}, chart::Domain::box(Vec3(0, 0, 0), Vec3(2, 2, 2)));
    const auto fit = chart::classify_conformal_map(inv, samples);
    CHECK(fit.kind == chart::ConformalClass::Type2);
    CHECK(fit.residual < 1e-8);
    CHECK(max_abs(fit.a - Vec3(-1, 0, 0.5)) < 1e-6);
    CHECK(std::abs(fit.b) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK_FALSE(fit.singular_point_in_domain);
  }

  SUBCASE("shear is rejected with a wide margin") {
    const auto fit = chart::classify_conformal_map(map_of("x1 + 0.5*x2", "x2", "x3"), samples);
    CHECK(fit.kind == chart::ConformalClass::NotSpherical);
    CHECK(fit.sphericity_residual >= 10 * fit.tolerance);
  }

  CHECK_THROWS_AS(chart::classify_conformal_map(SpatialMap::identity(),
                                                std::vector<Vec3>(samples.begin(),
                                                                  samples.begin() + 5)),
                  InvalidArgument);
}
