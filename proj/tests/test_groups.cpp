#include <doctest.h>

#include <functional>

#include "pact/error.hpp"
#include "pact/groups.hpp"

using namespace pact;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::ParseError;
}

void check_axioms(const FiniteGroup& G) {
  const int n = G.order();
  for (int a = 0; a < n; ++a) {
    CHECK(G.mul(0, a) == a);
    CHECK(G.mul(a, 0) == a);
    CHECK(G.mul(a, G.inv(a)) == 0);
    CHECK(G.mul(G.inv(a), a) == 0);
    CHECK(G.inv(G.inv(a)) == a);
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) REQUIRE(G.mul(a, G.mul(b, c)) == G.mul(G.mul(a, b), c));
  }
}

}  // namespace

TEST_CASE("named families satisfy the axioms") {
  for (const auto& G : {FiniteGroup::cyclic(1), FiniteGroup::cyclic(2), FiniteGroup::cyclic(6),
                        FiniteGroup::klein4(), FiniteGroup::dihedral(3), FiniteGroup::dihedral(4),
                        FiniteGroup::symmetric(3), FiniteGroup::symmetric(4)})
    check_axioms(G);
  CHECK(FiniteGroup::dihedral(4).order() == 8);
  CHECK(FiniteGroup::symmetric(4).order() == 24);
  CHECK(code_of([] { FiniteGroup::symmetric(5); }) == ErrorCode::OrderTooLarge);
  CHECK(code_of([] { FiniteGroup::named("alternating", 4); }) == ErrorCode::UnknownFamily);
}

TEST_CASE("cyclic(2) is addition mod 2") {
  const auto G = FiniteGroup::cyclic(2);
  CHECK(G.order() == 2);
  CHECK(G.table() == FiniteGroup::Table{{0, 1}, {1, 0}});
}

TEST_CASE("explicit tables") {
  const FiniteGroup::Table klein{{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  const auto V = FiniteGroup::from_table(klein);
  for (int a = 0; a < 4; ++a) CHECK(V.inv(a) == a);
  CHECK(V == FiniteGroup::klein4());

  // a latin square with identity 0 that is not associative
  const FiniteGroup::Table bad{{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  try {
    FiniteGroup::from_table(bad);
    FAIL("accepted a non-associative table");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonAssociative);
    REQUIRE(e.witness().size() == 3);
    const auto& w = e.witness();
    CHECK(bad[w[0]][bad[w[1]][w[2]]] != bad[bad[w[0]][w[1]]][w[2]]);
  }
  CHECK(code_of([] { FiniteGroup::from_table({{1, 0}, {0, 1}}); }) == ErrorCode::NoIdentity);
  CHECK(code_of([] { FiniteGroup::from_table({{0, 1}, {1, 1}}); }) == ErrorCode::NoInverse);
}

TEST_CASE("subgroup closure") {
  const auto C4 = FiniteGroup::cyclic(4);
  CHECK(subgroup_closure(C4, {}).members == std::vector<int>{0});
  CHECK(subgroup_closure(C4, {2}).members == std::vector<int>{0, 2});
  CHECK(subgroup_closure(C4, {0, 1, 2, 3}).members == std::vector<int>{0, 1, 2, 3});
  CHECK(subgroup_closure(C4, {1}).order() == 4);
  CHECK(code_of([&] { make_subgroup(C4, {0, 1}); }) == ErrorCode::NotASubgroup);
}

TEST_CASE("coset decomposition") {
  const auto C4 = FiniteGroup::cyclic(4);
  const auto H = make_subgroup(C4, {0, 2});
  CHECK(coset_decomposition(H, CosetSide::Left) == std::vector<std::vector<int>>{{0, 2}, {1, 3}});

  const auto S3 = FiniteGroup::symmetric(3);
  for (const auto& K : all_subgroups(S3)) {
    if (K.order() != 2) continue;
    for (auto side : {CosetSide::Left, CosetSide::Right}) {
      const auto blocks = coset_decomposition(K, side);
      CHECK(blocks.size() == 3);
      std::vector<int> seen(6, 0);
      for (const auto& b : blocks) {
        CHECK(b.size() == 2);
        for (int g : b) ++seen[g];
      }
      CHECK(seen == std::vector<int>(6, 1));
    }
  }
  const auto whole = make_subgroup(S3, {0, 1, 2, 3, 4, 5});
  CHECK(coset_decomposition(whole, CosetSide::Right).size() == 1);
}

TEST_CASE("subgroup lattices") {
  CHECK(all_subgroups(FiniteGroup::symmetric(3)).size() == 6);
  CHECK(all_subgroups(FiniteGroup::klein4()).size() == 5);
  CHECK(all_subgroups(FiniteGroup::cyclic(6)).size() == 4);
  CHECK(all_subgroups(FiniteGroup::dihedral(4)).size() == 10);

  const auto S3 = FiniteGroup::symmetric(3);
  for (const auto& K : all_subgroups(S3)) {
    const auto as = as_group(K);
    CHECK(as.group.order() == K.order());
    for (int a = 0; a < K.order(); ++a)
      for (int b = 0; b < K.order(); ++b)
        CHECK(as.to_parent[as.group.mul(a, b)] == S3.mul(as.to_parent[a], as.to_parent[b]));
  }
}
