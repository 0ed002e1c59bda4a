#include <cmath>

#include "diracgauge/dirac.hpp"

namespace diracgauge::dirac {

int Grid::sites() const {
  int n = 1;
  for (int k = 0; k < axes; ++k) n *= N;
  return n;
}

double Grid::cell_volume() const { return std::pow(spacing(), axes); }

Vec4 Grid::point(int site) const {
  Vec4 X(x0, origin[0], origin[1], origin[2]);
  for (int k = 0; k < axes; ++k) {
    X[1 + k] += (site % N) * spacing();
    site /= N;
  }
  return X;
}

int Grid::neighbor(int site, int axis, int step) const {
  int stride = 1;
  for (int k = 0; k < axis; ++k) stride *= N;
  const int coord = (site / stride) % N;
  const int moved = ((coord + step) % N + N) % N;
  return site + (moved - coord) * stride;
}

void Grid::validate() const {
  if (axes != 1 && axes != 3) throw InvalidArgument("grid axes must be 1 or 3");
  if (N < 4) throw InvalidArgument("grid needs N >= 4 points per axis");
  if (!(length > 0.0)) throw InvalidArgument("grid box length must be positive");
}

const char* to_string(Variant v) { return v == Variant::DFW ? "DFW" : "QRD0"; }

Variant parse_variant(std::string_view name) {
  if (name == "DFW" || name == "dfw") return Variant::DFW;
  if (name == "QRD0" || name == "qrd0") return Variant::QRD0;
  throw InvalidArgument("unknown variant '" + std::string(name) + "'");
}

const char* to_string(Tag t) {
  switch (t) {
    case Tag::H_DFW: return "H_DFW";
    case Tag::H_QRD0: return "H_QRD0";
    case Tag::E: return "E";
  }
  return "?";
}

SpinConnection dfw_spin_connection(const tetrad::TetradField& t, const chart::MetricField& m,
                                   const clifford::FlatGammaSet& flat, const Vec4& X,
                                   const fd::Options& opts, double tol) {
  const Mat4 a = t.a(X);
  const Mat4 b = a.inverse();
  const chart::Christoffel chr = chart::christoffel(m, X, opts);
  std::array<Mat4, 4> da;
  for (int mu = 0; mu < 4; ++mu) da[mu] = t.partial(X, mu, opts);

  SpinConnection out;
  for (int mu = 0; mu < 4; ++mu) {
    // K(nu, lambda) = Chr^nu_{mu lambda}
    Mat4 K;
    for (int nu = 0; nu < 4; ++nu) K.row(nu) = chr[nu].row(mu);
    const Mat4 w = b * (da[mu] + K * a);
    const Mat4 lowered = eta() * w;
    const Mat4 w_proj = eta() * (0.5 * (lowered - lowered.transpose()));
    out.gamma[mu] = clifford::spinor_generator(w_proj, flat);
  }

  const GammaSet g = clifford::deform(flat, a);
  for (int mu = 0; mu < 4; ++mu) {
    const GammaSet dg = clifford::deform(flat, da[mu]);
    for (int nu = 0; nu < 4; ++nu) {
      CMat4 r = dg[nu] + out.gamma[mu] * g[nu] - g[nu] * out.gamma[mu];
      for (int lambda = 0; lambda < 4; ++lambda) r += chr[nu](mu, lambda) * g[lambda];
      out.compatibility_residual = std::max(out.compatibility_residual, max_abs(r));
    }
  }
  if (!(out.compatibility_residual <= tol))
    throw CompatibilityResidualExceeded("spin connection fails metric compatibility",
                                        out.compatibility_residual);
  return out;
}

Connection Connection::trivial() {
  return Connection(Kind::Trivial, [](const Vec4&) {
    ConnectionSet zero;
    for (auto& z : zero) z.setZero();
    return zero;
  });
}

Connection Connection::dfw(const tetrad::TetradField& t, const chart::MetricField& m,
                           const clifford::FlatGammaSet& flat, const fd::Options& opts,
                           double tol) {
  return Connection(Kind::Dfw, [t, m, flat, opts, tol](const Vec4& X) {
    return dfw_spin_connection(t, m, flat, X, opts, tol).gamma;
  });
}

}  // namespace diracgauge::dirac
