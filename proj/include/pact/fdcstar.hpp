#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pact/linalg.hpp"
#include "pact/paction.hpp"
#include "pact/rational.hpp"

namespace pact {

struct Term {
  int index;
  Rational coeff;
};
using Combination = std::vector<Term>;

/// Finite-dimensional *-algebra presented by structure constants on a basis
/// e_0..e_{n-1}: e_i e_j and e_i^* as rational combinations. Real
/// coefficients throughout, so the star is the linear extension.
class StarAlgebra {
 public:
  StarAlgebra(std::vector<std::string> labels, std::vector<Combination> products,
              std::vector<Combination> stars);

  int dimension() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Combination& product(int i, int j) const { return products_[i * dimension() + j]; }
  const Combination& star(int i) const { return stars_[i]; }

  Vector<Rational> multiply(const Vector<Rational>& a, const Vector<Rational>& b) const;
  Vector<Rational> adjoint(const Vector<Rational>& a) const;

  /// Matrix of x -> a x in the basis.
  template <typename Scalar>
  Matrix<Scalar> left_regular(const Vector<Scalar>& a) const {
    const int n = dimension();
    Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      if (a(i) == Scalar(0)) continue;
      for (int j = 0; j < n; ++j)
        for (const auto& t : product(i, j)) m(t.index, j) += a(i) * Scalar(t.coeff);
    }
    return m;
  }

  /// Associativity on all basis triples and (e_i e_j)^* = e_j^* e_i^*,
  /// e_i^** = e_i, exactly.
  CheckResult check_axioms() const;

 private:
  std::vector<std::string> labels_;
  std::vector<Combination> products_;
  std::vector<Combination> stars_;
};

/// A *-algebra summarized by its matrix block sizes.
struct FDCStarAlgebra {
  std::vector<int> blocks;  // sorted
  double integrality_residual = 0.0;
  int attempts = 0;

  int dimension() const {
    int d = 0;
    for (int m : blocks) d += m * m;
    return d;
  }
  friend bool operator==(const FDCStarAlgebra& a, const FDCStarAlgebra& b) {
    return a.blocks == b.blocks;
  }
};

/// Crossed product of a finite partial action: basis delta_x u_g (x in X_g)
/// with (delta_x u_g)(delta_y u_h) = delta_x u_{gh} if theta_{g^-1}(x) = y
/// and (delta_x u_g)^* = delta_{theta_{g^-1}(x)} u_{g^-1}.
struct CrossedProduct {
  StarAlgebra algebra;
  std::vector<std::pair<int, int>> basis;  // (x, g), ordered by g then x
  std::vector<int> index;                  // g * |X| + x -> basis index or -1
  int carrier_size = 0;

  int index_of(int x, int g) const { return index[g * carrier_size + x]; }
};

CrossedProduct crossed_product(const PartialAction& pa);

/// Group algebra C[G] (crossed product of G acting on one point).
CrossedProduct group_algebra(const FiniteGroup& group);

inline constexpr double kEigenSeparation = 1e-8;
inline constexpr double kIntegralityTolerance = 1e-6;
inline constexpr int kBlockRetries = 3;

/// Numeric Artin-Wedderburn: center from the commutation system, a seeded
/// random self-adjoint central element, its eigenprojections as the minimal
/// central projections, and block sizes from the ideal dimensions. Throws
/// NotSemisimpleOrDegenerate or IntegralityFailure.
FDCStarAlgebra block_structure(const StarAlgebra& alg, std::uint64_t seed = 0x5eed);

/// Orbit/stabilizer route: an orbit O with isotropy S contributes the blocks
/// |O| * d for the blocks d of C[S].
FDCStarAlgebra crossed_product_blocks_combinatorial(const PartialAction& pa,
                                                    std::uint64_t seed = 0x5eed);

/// Fixed point algebra, solved from its defining linear conditions and
/// cross-checked against orbit-constant functions. Commutative, so every
/// block is 1.
FDCStarAlgebra fixed_point_algebra(const PartialAction& pa);

/// Orbit indicator functions, a basis of the fixed point algebra.
std::vector<Vector<Rational>> fixed_point_basis(const PartialAction& pa);

/// Finite-dimensional criteria: Morita equivalent iff equal block counts,
/// isomorphic iff equal block multisets.
bool morita_equivalent(const FDCStarAlgebra& a, const FDCStarAlgebra& b);
bool isomorphic(const FDCStarAlgebra& a, const FDCStarAlgebra& b);

struct BimoduleReport {
  bool central_unit = false;   // x_alpha >= 1, central, fixed
  bool positivity = false;     // both inner products positive definite on the family
  bool compatibility = false;  // <x,y> . xi = <x, y . xi> on basis triples
  bool left_full = false;      // <x, x_alpha^-1> = x on the fixed point algebra
  bool right_full = false;     // span of right inner products is the crossed product
  int span_dimension = 0;
  int algebra_dimension = 0;

  bool all() const {
    return central_unit && positivity && compatibility && left_full && right_full;
  }
  friend bool operator==(const BimoduleReport&, const BimoduleReport&) = default;
};

/// Exact check of the A^alpha - (A x| G) imprimitivity bimodule structure on
/// A = functions on X.
BimoduleReport imprimitivity_bimodule_verify(const PartialAction& pa);

}  // namespace pact
