#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "diracgauge/dirac.hpp"

namespace diracgauge::dirac {

namespace {

const Complex kI(0.0, 1.0);

CMat4 invert_block(const CMat4& m, const char* what) {
  Eigen::PartialPivLU<CMat4> lu(m);
  const double det = std::abs(lu.determinant());
  if (!(det > 1e-14 * std::pow(std::max(max_abs(m), 1e-300), 4)))
    throw SingularMatrix(what, det);
  return lu.inverse();
}

}  // namespace

CMat DiscreteOperator::gram_dense() const {
  const int n = static_cast<int>(gram.size());
  CMat out = CMat::Zero(4 * n, 4 * n);
  for (int s = 0; s < n; ++s) out.block<4, 4>(4 * s, 4 * s) = gram[s];
  return out;
}

Complex DiscreteOperator::inner(const CVec& psi, const CVec& phi) const {
  Complex sum = 0.0;
  for (std::size_t s = 0; s < gram.size(); ++s) {
    const auto p = psi.segment<4>(4 * s);
    const auto q = phi.segment<4>(4 * s);
    sum += p.dot(gram[s] * q);
  }
  return sum;
}

DiscreteOperator assemble_hamiltonian(const tetrad::GammaField& gf, const Connection& conn,
                                      const chart::MetricField& m, const Grid& grid,
                                      double mass, Variant variant, const fd::Options& opts) {
  grid.validate();
  const int n = grid.sites();
  const double dx = grid.spacing();
  DiscreteOperator H;
  H.tag = variant == Variant::DFW ? Tag::H_DFW : Tag::H_QRD0;
  H.matrix = CMat::Zero(4 * n, 4 * n);
  H.gram.resize(n);

  for (int s = 0; s < n; ++s) {
    const Vec4 X = grid.point(s);
    const GammaSet g = gf.at(X);
    const CMat4 A = gf.hermitizer(X);
    const ConnectionSet G = conn.at(X);
    const CMat4 g0inv = invert_block(g[0], "gamma^0 is not invertible");

    CMat4 inner = mass * CMat4::Identity();
    for (int j = 1; j < 4; ++j) inner -= kI * g[j] * G[j];

    if (variant == Variant::QRD0) {
      const chart::Christoffel chr = chart::christoffel(m, X, opts);
      CMat4 div = CMat4::Zero();
      for (int mu = 0; mu < 4; ++mu) {
        div += fd::partial(
            [&](const Vec4& Y) { return (gf.hermitizer(Y) * gf.at(Y)[mu]).eval(); }, X, mu,
            opts);
        for (int lambda = 0; lambda < 4; ++lambda) {
          const double trace = chr[mu](mu, lambda);
          if (trace != 0.0) div += trace * (A * g[lambda]);
        }
      }
      inner -= kI * 0.5 * invert_block(A, "hermitizing matrix is singular") * div;
    }

    H.matrix.block<4, 4>(4 * s, 4 * s) += g0inv * inner - kI * G[0];

    for (int axis = 0; axis < grid.axes; ++axis) {
      const CMat4 hop = (-kI / (2.0 * dx)) * (g0inv * g[axis + 1]);
      H.matrix.block<4, 4>(4 * s, 4 * grid.neighbor(s, axis, +1)) += hop;
      H.matrix.block<4, 4>(4 * s, 4 * grid.neighbor(s, axis, -1)) -= hop;
    }

    const double sqrt_minus_g = m.at(X).sqrt_minus_g;
    H.gram[s] = (A * g[0]) * (sqrt_minus_g * grid.cell_volume());
  }
  return H;
}

DiscreteOperator energy_operator(const DiscreteOperator& H) {
  const int n = static_cast<int>(H.gram.size());
  if (H.matrix.rows() != 4 * n) throw InvalidArgument("operator and Gram matrix sizes differ");
  std::vector<CMat4> gram_inv(n);
  for (int s = 0; s < n; ++s) {
    const CMat4 herm = 0.5 * (H.gram[s] + H.gram[s].adjoint());
    Eigen::SelfAdjointEigenSolver<CMat4> es(herm, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (!(lo > 0.0)) throw NotPositiveDefinite("Gram matrix is not positive definite", lo);
    gram_inv[s] = H.gram[s].inverse();
  }

  // H^dagger M, then multiply by M^{-1} from the left, block row by block row.
  CMat adj = H.matrix.adjoint();
  for (int c = 0; c < n; ++c) {
    adj.middleCols<4>(4 * c) = adj.middleCols<4>(4 * c) * H.gram[c];
  }
  for (int r = 0; r < n; ++r) {
    adj.middleRows<4>(4 * r) = gram_inv[r] * adj.middleRows<4>(4 * r);
  }

  DiscreteOperator E;
  E.tag = Tag::E;
  E.gram = H.gram;
  E.matrix = 0.5 * (H.matrix + adj);

  CMat ME = E.matrix;
  for (int r = 0; r < n; ++r) ME.middleRows<4>(4 * r) = H.gram[r] * E.matrix.middleRows<4>(4 * r);
  const double scale = std::max(1.0, max_abs(ME));
  const double asym = max_abs(ME - ME.adjoint());
  if (!(asym <= 1e-10 * scale))
    throw NumericalError("M E is not hermitian", asym);
  return E;
}

DiscreteOperator conjugate(const DiscreteOperator& op, const std::vector<CMat4>& S) {
  const int n = static_cast<int>(S.size());
  if (op.matrix.rows() != 4 * n) throw InvalidArgument("similarity has the wrong number of blocks");
  DiscreteOperator out = op;
  for (int c = 0; c < n; ++c) out.matrix.middleCols<4>(4 * c) = out.matrix.middleCols<4>(4 * c) * S[c];
  for (int r = 0; r < n; ++r) {
    Eigen::PartialPivLU<CMat4> lu(S[r]);
    out.matrix.middleRows<4>(4 * r) = lu.solve(out.matrix.middleRows<4>(4 * r));
  }
  for (int s = 0; s < static_cast<int>(out.gram.size()); ++s)
    out.gram[s] = S[s].adjoint() * op.gram[s] * S[s];
  return out;
}

std::vector<double> Spectrum::real_parts() const {
  std::vector<double> out;
  out.reserve(values.size());
  for (const Complex& v : values) out.push_back(v.real());
  return out;
}

Spectrum spectrum(const CMat& matrix, int cap) {
  if (matrix.rows() > cap)
    throw DimensionCap("operator dimension " + std::to_string(matrix.rows()) +
                       " exceeds the cap " + std::to_string(cap));
  Eigen::ComplexEigenSolver<CMat> es(matrix, false);
  if (es.info() != Eigen::Success) throw NumericalError("eigenvalue solver did not converge");
  Spectrum out;
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.values.begin(), out.values.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  for (const Complex& v : out.values) out.max_imag = std::max(out.max_imag, std::abs(v.imag()));
  return out;
}

Spectrum spectrum(const DiscreteOperator& op, int cap) { return spectrum(op.matrix, cap); }

double spectral_distance(const Spectrum& a, const Spectrum& b) {
  if (a.values.size() != b.values.size())
    throw InvalidArgument("spectra have different lengths");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  return worst;
}

CMat4 zero_momentum_block(const DiscreteOperator& op) {
  const int n = op.dimension() / 4;
  CMat4 out = CMat4::Zero();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out += op.matrix.block<4, 4>(4 * r, 4 * c);
  return out / static_cast<double>(n);
}

}  // namespace diracgauge::dirac
