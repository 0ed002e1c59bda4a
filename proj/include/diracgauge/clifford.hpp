#pragma once

// Dirac matrices, hermitizing matrices, similarity transformations and the
// spinor lift of a Lorentz matrix.

#include <string_view>
#include <vector>

#include "diracgauge/error.hpp"
#include "diracgauge/types.hpp"

namespace diracgauge::clifford {

enum class Representation { Dirac, Chiral, Custom };
const char* to_string(Representation r);

/// Constant gammas obeying {g^a, g^b} = 2 eta^{ab}.
class FlatGammaSet {
 public:
  static FlatGammaSet dirac();
  static FlatGammaSet chiral();
  /// Validates the anticommutation relation to 1e-14; InvalidArgument otherwise.
  static FlatGammaSet custom(const GammaSet& g);

  const CMat4& operator[](int alpha) const { return g_[alpha]; }
  const GammaSet& matrices() const { return g_; }
  Representation representation() const { return rep_; }

 private:
  FlatGammaSet(GammaSet g, Representation rep) : g_(std::move(g)), rep_(rep) {}
  GammaSet g_;
  Representation rep_;
};

/// "dirac" or "chiral"; UnknownRepresentation otherwise.
FlatGammaSet flat_gammas(std::string_view rep);

/// gamma^mu = a^mu_alpha gamma_flat^alpha.
GammaSet deform(const FlatGammaSet& flat, const Mat4& a);

/// max over mu, nu of |g^mu g^nu + g^nu g^mu - 2 g_inv(mu,nu)|. The second
/// argument is the contravariant metric g^{mu nu}.
double check_anticommutation(const GammaSet& gammas, const Mat4& g_inv);

/// Hermitian A with A gamma^mu hermitian for all mu, scaled to |det A| = 1
/// with the sign that makes A gamma^0 positive definite. Throws NoHermitizer.
CMat4 hermitizing_matrix(const GammaSet& gammas);

struct Similarity {
  GammaSet gammas;
  CMat4 A;
};

/// gamma -> S^{-1} gamma S, A -> S^dagger A S. Throws SingularMatrix.
Similarity apply_similarity(const GammaSet& gammas, const CMat4& A, const CMat4& S);

struct SpinTransform {
  CMat4 S;
  Mat4 L;
  /// max over alpha of |S^{-1} g^alpha S - L^alpha_beta g^beta|.
  double residual = 0.0;
};

/// S = exp(1/4 omega_{ab} g^a g^b) with omega = log L, the sign fixed by
/// continuity from S(I) = 1. Verified against the defining relation
/// S^{-1} g^a S = L^a_b g^b; LiftVerificationFailed if that misses 1e-10.
SpinTransform spin_lift(const Mat4& L, const FlatGammaSet& flat = FlatGammaSet::dirac());

/// Lift of the product L_1 L_2 ... L_n taken along the path, one factor at
/// a time. Use it to go past the pi branch.
SpinTransform spin_lift_path(const std::vector<Mat4>& steps,
                             const FlatGammaSet& flat = FlatGammaSet::dirac());

/// 1/4 omega_{ab} g^a g^b for omega in so(1,3) (mixed indices omega^a_b).
CMat4 spinor_generator(const Mat4& omega, const FlatGammaSet& flat);

/// max over alpha of |S^{-1} g^alpha S - L^alpha_beta g^beta|.
double lift_residual(const CMat4& S, const Mat4& L, const FlatGammaSet& flat);

struct HermParts {
  CMat4 herm;
  CMat4 antiherm;
};

HermParts herm_antiherm_parts(const CMat4& M);

}  // namespace diracgauge::clifford
