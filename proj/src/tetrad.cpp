#include "diracgauge/tetrad.hpp"

#include <cmath>

namespace diracgauge::tetrad {

const char* to_string(Prescription p) {
  switch (p) {
    case Prescription::Diagonal: return "diagonal";
    case Prescription::Cholesky: return "cholesky";
    case Prescription::TimeGauge: return "time_gauge";
  }
  return "?";
}

Prescription parse_prescription(std::string_view name) {
  if (name == "diagonal") return Prescription::Diagonal;
  if (name == "cholesky") return Prescription::Cholesky;
  if (name == "time_gauge") return Prescription::TimeGauge;
  throw InvalidArgument("unknown tetrad prescription '" + std::string(name) + "'");
}

namespace {

void require_admissible(const Mat4& G) {
  const auto r = chart::check_admissible(G);
  if (!r.ok) throw NotAdmissible("metric is not admissible (g00 <= 0 or spatial block not negative definite)");
}

}  // namespace

Mat4 diagonal_tetrad(const Mat4& G) {
  Mat4 off = G;
  off.diagonal().setZero();
  if (max_abs(off) >= 1e-12) throw NotDiagonal("metric has off-diagonal entries");
  require_admissible(G);
  return G.diagonal().cwiseAbs().cwiseSqrt().cwiseInverse().asDiagonal();
}

Mat4 cholesky_tetrad(const Mat4& G) {
  const Mat4 C = lorentz::eta_cholesky(G).C;
  return C.triangularView<Eigen::Lower>().solve(Mat4::Identity());
}

Mat4 time_gauge_tetrad(const Mat4& G) {
  require_admissible(G);
  const Mat3 h = -G.bottomRightCorner<3, 3>();
  const Vec3 g0 = G.block<3, 1>(1, 0);
  const Mat3 root = lorentz::sym_sqrt3(h);
  const Vec3 hinv_g0 = h.llt().solve(g0);
  const double q = G(0, 0) + g0.dot(hinv_g0);
  if (!(q > 0.0)) throw NotAdmissible("time-gauge column 0 is not timelike");
  Mat4 a = Mat4::Zero();
  a(0, 0) = 1.0 / std::sqrt(q);
  a.block<3, 1>(1, 0) = a(0, 0) * hinv_g0;
  a.bottomRightCorner<3, 3>() = root.inverse();
  return a;
}

Mat4 prescribed_tetrad(Prescription p, const Mat4& G) {
  switch (p) {
    case Prescription::Diagonal: return diagonal_tetrad(G);
    case Prescription::Cholesky: return cholesky_tetrad(G);
    case Prescription::TimeGauge: return time_gauge_tetrad(G);
  }
  throw InvalidArgument("unknown prescription");
}

double orthonormality_residual(const Mat4& a, const Mat4& G) {
  return max_abs(a.transpose() * G * a - eta());
}

TetradField::TetradField(Evaluator eval, std::string description)
    : eval_(std::move(eval)), description_(std::move(description)) {}

TetradField TetradField::prescribed(const chart::MetricField& m, Prescription p) {
  return TetradField([m, p](const Vec4& X) { return prescribed_tetrad(p, m.components(X)); },
                     std::string(to_string(p)) + " tetrad of " + m.name());
}

TetradField TetradField::via_chart(const chart::MetricField& m, const chart::SpatialMap& map,
                                   Prescription p, const fd::Options& opts) {
  auto eval = [m, map, p, opts](const Vec4& X) {
    const chart::PushedMetric pushed = chart::pushforward_metric(m, map, X, opts);
    return (pushed.P * prescribed_tetrad(p, pushed.g_prime)).eval();
  };
  return TetradField(eval, std::string(to_string(p)) + " tetrad of " + m.name() +
                               " built in a mapped chart");
}

TetradField TetradField::rotating(double rate) const {
  auto inner = eval_;
  return TetradField(
      [inner, rate](const Vec4& X) { return (inner(X) * lorentz::rotation(3, rate * X[0])).eval(); },
      description_ + ", triad rotating about x3");
}

Mat4 TetradField::partial(const Vec4& X, int mu, const fd::Options& opts) const {
  return fd::partial([this](const Vec4& Y) { return a(Y); }, X, mu, opts);
}

lorentz::LorentzMatrix inter_chart_L(const Mat4& a, const Mat4& P, const Mat4& a_prime) {
  lorentz::LorentzMatrix out;
  out.L = a.inverse() * P * a_prime;
  out.check = lorentz::is_lorentz(out.L);
  return out;
}

lorentz::LorentzMatrix inter_chart_L(const TetradField& t1, const TetradField& t2,
                                     const Vec4& X) {
  return inter_chart_L(t1.a(X), Mat4::Identity(), t2.a(X));
}

TimeDependence time_dependence_of_L(const TetradField& t1, const TetradField& t2,
                                    const std::vector<Vec4>& samples, double time_step) {
  TimeDependence out;
  fd::Options opts;
  opts.step = time_step;
  for (const Vec4& X : samples) {
    const Mat4 dL = fd::partial([&](const Vec4& Y) { return inter_chart_L(t1, t2, Y).L; }, X, 0,
                                opts);
    out.max_norm = std::max(out.max_norm, max_abs(dL));
    out.per_point.push_back(dL);
  }
  return out;
}

GammaField::GammaField(GammaEvaluator gammas, MatrixEvaluator hermitizer,
                       clifford::FlatGammaSet flat)
    : gammas_(std::move(gammas)), hermitizer_(std::move(hermitizer)), flat_(std::move(flat)) {}

GammaSet GammaField::partial(const Vec4& X, int nu, const fd::Options& opts) const {
  GammaSet out;
  for (int mu = 0; mu < 4; ++mu)
    out[mu] = fd::partial([&](const Vec4& Y) { return at(Y)[mu]; }, X, nu, opts);
  return out;
}

GammaField GammaField::transformed(MatrixEvaluator S) const {
  auto gammas = gammas_;
  auto herm = hermitizer_;
  auto g = [gammas, S](const Vec4& X) {
    const CMat4 s = S(X);
    Eigen::PartialPivLU<CMat4> lu(s);
    GammaSet in = gammas(X);
    GammaSet out;
    for (int mu = 0; mu < 4; ++mu) out[mu] = lu.solve(in[mu] * s);
    return out;
  };
  auto A = [herm, S](const Vec4& X) {
    const CMat4 s = S(X);
    return (s.adjoint() * herm(X) * s).eval();
  };
  return GammaField(g, A, flat_);
}

GammaField gamma_from_tetrad(const TetradField& t, const clifford::FlatGammaSet& flat) {
  const CMat4 A = clifford::hermitizing_matrix(flat.matrices());
  return GammaField([t, flat](const Vec4& X) { return clifford::deform(flat, t.a(X)); },
                    [A](const Vec4&) { return A; }, flat);
}

GammaSet transport_gamma(const GammaField& gf, const chart::SpatialMap& map, const Vec4& X,
                         const fd::Options& opts) {
  const Mat3 F = map.jacobian(X.tail<3>(), opts);
  const double det = F.determinant();
  if (!(std::abs(det) > 1e-14 * std::pow(std::max(max_abs(F), 1e-300), 3)))
    throw SingularJacobian("spatial map Jacobian is singular", std::abs(det));
  Mat4 J = Mat4::Identity();
  J.bottomRightCorner<3, 3>() = F;
  const GammaSet g = gf.at(X);
  GammaSet out;
  for (int mu = 0; mu < 4; ++mu) {
    out[mu].setZero();
    for (int nu = 0; nu < 4; ++nu) out[mu] += J(mu, nu) * g[nu];
  }
  return out;
}

}  // namespace diracgauge::tetrad
