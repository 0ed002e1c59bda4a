#include "diracgauge/metric.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace diracgauge::chart {

namespace {

constexpr std::array<std::pair<int, int>, 10> kComponentIndex = {
    {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}}};

Vec4 spacetime_point(const Vec3& x) { return Vec4(0.0, x[0], x[1], x[2]); }

}  // namespace

// ---------------------------------------------------------------------------
// MetricField

MetricField MetricField::from_components(const std::array<expr::Expr, 10>& components,
                                         const expr::Params& params, std::string name) {
  std::array<expr::Expr, 10> bound;
  for (std::size_t i = 0; i < components.size(); ++i) bound[i] = components[i].bind(params);
  auto eval = [bound](const Vec4& X) {
    Mat4 g;
    for (std::size_t i = 0; i < bound.size(); ++i) {
      const auto [r, c] = kComponentIndex[i];
      g(r, c) = g(c, r) = expr::eval(bound[i], X);
    }
    return g;
  };
  return MetricField(std::make_shared<const Impl>(Impl{std::move(name), eval, nullptr, ""}));
}

MetricField MetricField::from_function(Evaluator f, std::string name) {
  auto eval = [f = std::move(f)](const Vec4& X) -> Mat4 {
    const Mat4 g = f(X);
    return 0.5 * (g + g.transpose());
  };
  return MetricField(std::make_shared<const Impl>(Impl{std::move(name), eval, nullptr, ""}));
}

MetricField MetricField::with_domain(std::function<bool(const Vec4&)> in_domain,
                                     std::string description) const {
  Impl copy = *impl_;
  copy.in_domain = std::move(in_domain);
  copy.domain_description = std::move(description);
  return MetricField(std::make_shared<const Impl>(std::move(copy)));
}

bool MetricField::in_domain(const Vec4& X) const {
  return !impl_->in_domain || impl_->in_domain(X);
}

Mat4 MetricField::components(const Vec4& X) const { return impl_->eval(X); }

MetricPoint MetricField::at(const Vec4& X) const {
  MetricPoint p;
  p.g = components(X);
  p.det = p.g.determinant();
  const double scale = std::pow(max_abs(p.g), 4);
  if (!(std::abs(p.det) >= 1e-14 * scale) || scale == 0.0)
    throw SingularMetric("metric is singular at the requested point", std::abs(p.det));
  p.g_inv = p.g.inverse();
  p.sqrt_minus_g = p.det < 0.0 ? std::sqrt(-p.det) : 0.0;
  return p;
}

Mat4 MetricField::partial(const Vec4& X, int mu, const fd::Options& opts) const {
  return fd::partial([this](const Vec4& Y) { return components(Y); }, X, mu, opts);
}

// ---------------------------------------------------------------------------
// Admissibility and isotropy

AdmissibilityReport check_admissible(const Mat4& g) {
  AdmissibilityReport r;
  r.g00 = g(0, 0);
  Eigen::SelfAdjointEigenSolver<Mat3> es(g.bottomRightCorner<3, 3>(), Eigen::EigenvaluesOnly);
  r.spatial_eigenvalues = es.eigenvalues();
  r.ok = r.g00 > 0.0 && r.spatial_eigenvalues.maxCoeff() < -1e-12;
  return r;
}

AdmissibilityReport check_admissible(const MetricField& m, const Vec4& X) {
  AdmissibilityReport r = check_admissible(m.at(X).g);
  r.in_domain = m.in_domain(X);
  r.ok = r.ok && r.in_domain;
  return r;
}

IsotropyReport is_space_isotropic_diagonal(const MetricField& m,
                                           const std::vector<Vec4>& samples) {
  IsotropyReport r;
  r.ok = true;
  for (const Vec4& X : samples) {
    const Mat4 g = m.components(X);
    const double f = g(0, 0);
    const double h = -g(1, 1);
    r.f_values.push_back(f);
    r.h_values.push_back(h);
    Mat4 off = g;
    off.diagonal().setZero();
    const bool diagonal = max_abs(off) < 1e-12;
    const double tol = 1e-12 * std::abs(g(1, 1));
    const bool isotropic = g(1, 1) < 0.0 && std::abs(g(2, 2) - g(1, 1)) <= tol &&
                           std::abs(g(3, 3) - g(1, 1)) <= tol;
    if (!(diagonal && isotropic && f > 0.0)) r.ok = false;
  }
  return r;
}

Christoffel christoffel(const MetricField& m, const Vec4& X, const fd::Options& opts) {
  const MetricPoint p = m.at(X);
  std::array<Mat4, 4> dg;  // dg[rho](mu, nu) = d_rho g_{mu nu}
  for (int rho = 0; rho < 4; ++rho) dg[rho] = m.partial(X, rho, opts);

  Christoffel gamma;
  for (auto& G : gamma) G.setZero();
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu; nu < 4; ++nu) {
      // lowered[rho] = Gamma_{rho mu nu}
      Vec4 lowered;
      for (int rho = 0; rho < 4; ++rho)
        lowered[rho] = 0.5 * (dg[mu](rho, nu) + dg[nu](rho, mu) - dg[rho](mu, nu));
      const Vec4 raised = p.g_inv * lowered;
      for (int lambda = 0; lambda < 4; ++lambda)
        gamma[lambda](mu, nu) = gamma[lambda](nu, mu) = raised[lambda];
    }
  }
  return gamma;
}

// ---------------------------------------------------------------------------
// Spatial maps

bool Domain::contains(const Vec3& x) const {
  if (all_space) return true;
  return (x.array() >= lo.array()).all() && (x.array() <= hi.array()).all();
}

SpatialMap::SpatialMap(std::array<expr::Expr, 3> forward, expr::Params params, Domain domain)
    : params_(std::move(params)), domain_(domain) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (forward[i].uses_coordinate(0))
      throw InvalidArgument("spatial map component " + std::to_string(i + 1) +
                            " depends on x0");
    forward_[i] = forward[i].bind(params_);
  }
}

SpatialMap SpatialMap::identity() {
  return SpatialMap({expr::Expr::coordinate(1), expr::Expr::coordinate(2),
                     expr::Expr::coordinate(3)});
}

namespace {

std::array<expr::Expr, 3> affine_exprs(const Mat3& A, const Vec3& c) {
  using expr::BinOp;
  using expr::Expr;
  std::array<Expr, 3> out;
  for (int j = 0; j < 3; ++j) {
    Expr sum = Expr::literal(c[j]);
    for (int k = 0; k < 3; ++k) {
      if (A(j, k) == 0.0) continue;
      sum = Expr::binary(BinOp::Add, sum,
                         Expr::binary(BinOp::Mul, Expr::literal(A(j, k)),
                                      Expr::coordinate(k + 1)));
    }
    out[j] = sum;
  }
  return out;
}

}  // namespace

SpatialMap SpatialMap::affine(const Mat3& A, const Vec3& c) {
  const Mat3 Ainv = A.inverse();
  return SpatialMap(affine_exprs(A, c)).with_inverse(affine_exprs(Ainv, -Ainv * c));
}

SpatialMap SpatialMap::with_inverse(std::array<expr::Expr, 3> inverse) const {
  SpatialMap copy = *this;
  for (auto& e : inverse) {
    if (e.uses_coordinate(0)) throw InvalidArgument("inverse map depends on x0");
    e = e.bind(params_);
  }
  copy.inverse_ = std::move(inverse);
  return copy;
}

Vec3 SpatialMap::apply(const Vec3& x) const {
  const Vec4 X = spacetime_point(x);
  return Vec3(expr::eval(forward_[0], X, params_), expr::eval(forward_[1], X, params_),
              expr::eval(forward_[2], X, params_));
}

bool SpatialMap::is_identity() const {
  for (int k = 0; k < 3; ++k)
    if (!(forward_[k] == expr::Expr::coordinate(k + 1))) return false;
  return true;
}

Vec3 SpatialMap::apply_inverse(const Vec3& xp) const {
  if (!inverse_) throw InvalidArgument("spatial map has no inverse attached");
  const Vec4 X = spacetime_point(xp);
  const auto& inv = *inverse_;
  return Vec3(expr::eval(inv[0], X, params_), expr::eval(inv[1], X, params_),
              expr::eval(inv[2], X, params_));
}

Mat3 SpatialMap::jacobian(const Vec3& x, const fd::Options& opts) const {
  Mat3 F;
  for (int k = 0; k < 3; ++k) {
    F.col(k) = fd::partial([this](const Vec3& y) { return apply(y); }, x, k, opts);
  }
  return F;
}

ChartJacobian jacobian_P(const SpatialMap& map, const Vec3& x, const fd::Options& opts) {
  ChartJacobian out;
  out.F = map.jacobian(x, opts);
  const double det = out.F.determinant();
  if (!(std::abs(det) > 1e-14 * std::pow(std::max(max_abs(out.F), 1e-300), 3)))
    throw SingularJacobian("spatial map Jacobian is singular", std::abs(det));
  out.P = Mat4::Identity();
  out.P.bottomRightCorner<3, 3>() = out.F.inverse();
  return out;
}

Mat3 cauchy_green(const SpatialMap& map, const Vec3& x, const fd::Options& opts) {
  const Mat3 F = map.jacobian(x, opts);
  return F.transpose() * F;
}

PushedMetric pushforward_metric(const MetricField& m, const SpatialMap& map, const Vec4& X,
                                const fd::Options& opts) {
  const Vec3 x = X.tail<3>();
  const ChartJacobian J = jacobian_P(map, x, opts);
  PushedMetric out;
  out.P = J.P;
  out.X_prime << X[0], map.apply(x);
  out.g_prime = J.P.transpose() * m.components(X) * J.P;
  return out;
}

MetricField pulled_to_chart(const MetricField& m, const SpatialMap& map,
                            const fd::Options& opts) {
  if (!map.has_inverse()) throw InvalidArgument("pulled_to_chart needs the inverse map");
  auto eval = [m, map, opts](const Vec4& Xp) -> Mat4 {
    Vec4 X;
    X << Xp[0], map.apply_inverse(Xp.tail<3>());
    return pushforward_metric(m, map, X, opts).g_prime;
  };
  return MetricField::from_function(eval, m.name() + "@chart");
}

}  // namespace diracgauge::chart
