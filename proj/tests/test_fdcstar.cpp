#include <doctest.h>

#include "fixtures.hpp"
#include "pact/error.hpp"
#include "pact/fdcstar.hpp"

using namespace pact;

namespace {

// Elements sum_g a_g u_g with a_g a function on X_g, multiplied by
// a_g u_g b_h u_h = alpha_g(alpha_{g^-1}(a_g) b_h) u_{gh}.
using Coeffs = std::vector<Vector<Rational>>;

Vector<Rational> act(const PartialAction& pa, int g, const Vector<Rational>& f) {
  Vector<Rational> out = Vector<Rational>::Zero(pa.size());
  for (int x : pa.domain(g)) out(x) = f(pa.apply(pa.group().inv(g), x));
  return out;
}

Coeffs symbolic_product(const PartialAction& pa, const Coeffs& a, const Coeffs& b) {
  const FiniteGroup& G = pa.group();
  Coeffs out(G.order(), Vector<Rational>::Zero(pa.size()));
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < G.order(); ++h)
      out[G.mul(g, h)] += act(pa, g, act(pa, G.inv(g), a[g]).cwiseProduct(b[h]));
  return out;
}

Coeffs symbolic_star(const PartialAction& pa, const Coeffs& a) {
  const FiniteGroup& G = pa.group();
  Coeffs out(G.order(), Vector<Rational>::Zero(pa.size()));
  for (int g = 0; g < G.order(); ++g) out[G.inv(g)] += act(pa, G.inv(g), a[g]);
  return out;
}

Coeffs basis_coeffs(const PartialAction& pa, int x, int g) {
  Coeffs out(pa.group().order(), Vector<Rational>::Zero(pa.size()));
  out[g](x) = 1;
  return out;
}

Coeffs from_vector(const CrossedProduct& cp, const PartialAction& pa, const Vector<Rational>& v) {
  Coeffs out(pa.group().order(), Vector<Rational>::Zero(pa.size()));
  for (int i = 0; i < cp.algebra.dimension(); ++i) out[cp.basis[i].second](cp.basis[i].first) += v(i);
  return out;
}

Vector<Rational> unit(int n, int i) {
  Vector<Rational> v = Vector<Rational>::Zero(n);
  v(i) = 1;
  return v;
}

}  // namespace

TEST_CASE("crossed product structure constants match the symbolic relations") {
  for (const auto& pa : {fixtures::ri1(), fixtures::ri2(), fixtures::regular(FiniteGroup::cyclic(3))}) {
    const auto cp = crossed_product(pa);
    const int n = cp.algebra.dimension();
    for (int i = 0; i < n; ++i) {
      const auto [x, g] = cp.basis[i];
      CHECK(from_vector(cp, pa, cp.algebra.adjoint(unit(n, i))) == symbolic_star(pa, basis_coeffs(pa, x, g)));
      for (int j = 0; j < n; ++j) {
        const auto [y, h] = cp.basis[j];
        CHECK(from_vector(cp, pa, cp.algebra.multiply(unit(n, i), unit(n, j))) ==
              symbolic_product(pa, basis_coeffs(pa, x, g), basis_coeffs(pa, y, h)));
      }
    }
    CHECK(cp.algebra.check_axioms().ok);
  }
}

TEST_CASE("crossed product dimensions") {
  CHECK(crossed_product(fixtures::ri1()).algebra.dimension() == 5);
  CHECK(crossed_product(fixtures::ri2()).algebra.dimension() == 2);
  CHECK(crossed_product(fixtures::trivial(3)).algebra.dimension() == 3);
}

TEST_CASE("trivial action gives the function algebra") {
  const auto pa = fixtures::trivial(3);
  const auto cp = crossed_product(pa);
  for (int i = 0; i < 3; ++i) {
    CHECK(cp.basis[i].second == 0);
    for (int j = 0; j < 3; ++j)
      CHECK(cp.algebra.multiply(unit(3, i), unit(3, j)) == (i == j ? unit(3, i) : Vector<Rational>::Zero(3)));
  }
  CHECK(block_structure(cp.algebra).blocks == std::vector<int>{1, 1, 1});
}

TEST_CASE("block structure examples") {
  CHECK(block_structure(crossed_product(fixtures::ri1()).algebra).blocks == std::vector<int>{1, 2});
  CHECK(block_structure(crossed_product(fixtures::ri2()).algebra).blocks == std::vector<int>{1, 1});
  CHECK(block_structure(crossed_product(fixtures::regular(FiniteGroup::cyclic(2))).algebra).blocks ==
        std::vector<int>{2});
  CHECK(block_structure(group_algebra(FiniteGroup::symmetric(3)).algebra).blocks ==
        std::vector<int>{1, 1, 2});
  const auto d4 = block_structure(group_algebra(FiniteGroup::dihedral(4)).algebra);
  CHECK(d4.blocks == std::vector<int>{1, 1, 1, 1, 2});
  CHECK(d4.integrality_residual < kIntegralityTolerance);
}

TEST_CASE("combinatorial route agrees") {
  CHECK(crossed_product_blocks_combinatorial(fixtures::ri1()).blocks == std::vector<int>{1, 2});
  CHECK(crossed_product_blocks_combinatorial(fixtures::ri2()).blocks == std::vector<int>{1, 1});
  CHECK(crossed_product_blocks_combinatorial(fixtures::regular(FiniteGroup::cyclic(3))).blocks ==
        std::vector<int>{3});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto pa = random_partial_action(seed, FiniteGroup::symmetric(3), 8, 0.7);
    const auto numeric = block_structure(crossed_product(pa).algebra);
    CHECK(numeric == crossed_product_blocks_combinatorial(pa));
    CHECK(numeric.dimension() == pa.total_domain_size());
  }
}

TEST_CASE("fixed point algebra") {
  CHECK(fixed_point_algebra(fixtures::ri1()).blocks == std::vector<int>{1, 1});
  CHECK(fixed_point_algebra(fixtures::ri2()).blocks == std::vector<int>{1});
  CHECK(fixed_point_algebra(fixtures::trivial(3)).blocks == std::vector<int>{1, 1, 1});
}

TEST_CASE("morita and isomorphism criteria") {
  const FDCStarAlgebra a{{1, 2}}, b{{1, 1}}, c{{1}};
  CHECK(morita_equivalent(a, b));
  CHECK_FALSE(isomorphic(a, b));
  CHECK_FALSE(morita_equivalent(b, c));
  CHECK(morita_equivalent(a, a));
  CHECK(isomorphic(a, a));
}

TEST_CASE("imprimitivity bimodule") {
  const auto r1 = imprimitivity_bimodule_verify(fixtures::ri1());
  CHECK(r1.all());
  CHECK(r1.span_dimension == 5);
  const auto r2 = imprimitivity_bimodule_verify(fixtures::ri2());
  CHECK(r2.central_unit);
  CHECK(r2.positivity);
  CHECK(r2.compatibility);
  CHECK(r2.left_full);
  CHECK_FALSE(r2.right_full);
  CHECK(r2.span_dimension == 1);
  CHECK(r2.algebra_dimension == 2);
  CHECK(imprimitivity_bimodule_verify(fixtures::trivial(3)).all());
}

TEST_CASE("free instances: crossed product and fixed points have equal block counts") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto pa = random_partial_action(seed, FiniteGroup::cyclic(4), 8, 0.8);
    if (!is_free(pa).free) continue;
    CHECK(morita_equivalent(crossed_product_blocks_combinatorial(pa), fixed_point_algebra(pa)));
    CHECK(imprimitivity_bimodule_verify(pa).all());
  }
}
