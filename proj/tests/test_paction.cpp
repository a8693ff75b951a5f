#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "pact/error.hpp"
#include "pact/harness.hpp"
#include "pact/paction.hpp"

using namespace pact;

namespace {

ErrorCode validation_code(const PartialActionData& d) {
  try {
    PartialAction::validate(d);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("validated");
  return ErrorCode::ParseError;
}

std::set<int> as_set(const std::vector<int>& v) { return {v.begin(), v.end()}; }

std::set<int> image(const PartialAction& pa, int g, const std::set<int>& s) {
  std::set<int> out;
  for (int x : s) out.insert(pa.apply(g, x));
  return out;
}

std::set<int> meet(const std::set<int>& a, const std::set<int>& b) {
  std::set<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

}  // namespace

TEST_CASE("validate") {
  const auto ri1 = fixtures::ri1();
  CHECK(ri1.size() == 3);
  CHECK(ri1.apply(1, 0) == 1);
  CHECK(ri1.apply(1, 2) == -1);

  PartialActionData not_bij{FiniteGroup::cyclic(2), 3, {}, {{0, 1, 2}, {0, 1}},
                            {{{0, 0}, {1, 1}, {2, 2}}, {{0, 1}, {1, 1}}}};
  CHECK(validation_code(not_bij) == ErrorCode::NotBijective);

  // theta_1 = theta_2 = swap under cyclic(4)
  PartialActionData comp{FiniteGroup::cyclic(4), 2, {"a", "b"}, {{0, 1}, {0, 1}, {0, 1}, {0, 1}},
                         {{{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}, {{0, 1}, {1, 0}}, {{0, 1}, {1, 0}}}};
  try {
    PartialAction::validate(comp);
    FAIL("validated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CompositionViolation);
    CHECK(e.witness() == std::vector<int>{1, 1, 0});
  }

  PartialActionData partial_identity{FiniteGroup::cyclic(2), 2, {}, {{0}, {}}, {{{0, 0}}, {}}};
  CHECK(validation_code(partial_identity) == ErrorCode::IdentityDomainNotFull);

  PartialActionData moved_identity{FiniteGroup::cyclic(2), 2, {}, {{0, 1}, {}}, {{{0, 1}, {1, 0}}, {}}};
  CHECK(validation_code(moved_identity) == ErrorCode::IdentityMapNotIdentity);

  PartialActionData out_of_range{FiniteGroup::cyclic(2), 1, {}, {{0}, {3}}, {{{0, 0}}, {{3, 3}}}};
  CHECK(validation_code(out_of_range) == ErrorCode::PointOutOfRange);
}

TEST_CASE("freeness") {
  CHECK(is_free(fixtures::ri1()).free);
  const auto r2 = is_free(fixtures::ri2());
  CHECK_FALSE(r2.free);
  REQUIRE(r2.witness);
  CHECK(*r2.witness == std::pair<int, int>{1, 0});
  CHECK(is_free(fixtures::trivial(3)).free);
}

TEST_CASE("translation groupoid") {
  const auto t1 = translation_groupoid(fixtures::ri1());
  CHECK(t1.arrows.size() == 5);
  CHECK(t1.orbits == std::vector<std::vector<int>>{{0, 1}, {2}});
  for (const auto& s : t1.stabilizers) CHECK(s.is_trivial());

  const auto t2 = translation_groupoid(fixtures::ri2());
  CHECK(t2.arrows.size() == 2);
  CHECK(t2.orbits.size() == 1);
  CHECK(t2.stabilizers[0].order() == 2);

  const auto t3 = translation_groupoid(fixtures::trivial(3));
  CHECK(t3.arrows.size() == 3);
  CHECK(t3.orbits.size() == 3);
}

TEST_CASE("restriction and quotient") {
  const auto ri1 = fixtures::ri1();
  const auto [s, rest] = restrict_and_quotient(ri1, {0, 1});
  CHECK(s.action.is_global());
  CHECK(s.action.apply(1, 0) == 1);
  CHECK(rest.points == std::vector<int>{2});
  CHECK(rest.action.size() == 1);
  CHECK(rest.action.domain(1).empty());

  try {
    restrict_to(ri1, {0});
    FAIL("accepted a non-invariant subset");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInvariant);
    CHECK(e.witness() == std::vector<int>{1, 0, 1});
  }

  const auto [all, none] = restrict_and_quotient(ri1, {0, 1, 2});
  CHECK(all.action == ri1);
  CHECK(none.action.size() == 0);
}

TEST_CASE("globalization") {
  const auto ri1 = fixtures::ri1();
  const auto g1 = globalize(ri1);
  CHECK(g1.envelope.size() == 4);
  CHECK(g1.envelope.is_global());
  CHECK(is_free(g1.envelope).free);
  CHECK(verify_globalization(ri1, g1).ok);
  CHECK(check_globalization_uniqueness(ri1, g1).ok);
  // [1,0] and [1,1] are paired, as are [1,2] and [g,2]
  CHECK(g1.envelope.apply(1, g1.embedding[0]) == g1.embedding[1]);
  CHECK(std::count(g1.embedding.begin(), g1.embedding.end(), g1.envelope.apply(1, g1.embedding[2])) == 0);

  const auto g3 = globalize(fixtures::trivial(3));
  CHECK(g3.envelope.size() == 6);

  const auto reg = fixtures::regular(FiniteGroup::symmetric(3));
  const auto gr = globalize(reg);
  CHECK(gr.envelope.size() == reg.size());
  CHECK(as_set(gr.embedding).size() == static_cast<std::size_t>(reg.size()));
}

TEST_CASE("central splitting") {
  const auto ri1 = fixtures::ri1();
  const auto g1 = globalize(ri1);
  // greedy order: p_1 is what the g-translate of iota(X) leaves uncovered
  CHECK(g1.splitting[1] == std::vector<int>(g1.embedding.begin(), g1.embedding.end()));
  CHECK(g1.splitting[0] == std::vector<int>{g1.embedding[2]});

  const auto reg = fixtures::regular(FiniteGroup::cyclic(3));
  const auto gr = globalize(reg);
  int nonempty = 0;
  for (const auto& p : gr.splitting) nonempty += !p.empty();
  CHECK(nonempty == 1);

  const auto t = fixtures::trivial(3);
  const auto gt = globalize(t);
  for (const auto& p : gt.splitting) CHECK(p.size() == 3);
}

TEST_CASE("minimal partial unitization") {
  const auto plus = minimal_partial_unitization(fixtures::ri1());
  CHECK(plus.size() == 4);
  CHECK(plus.domain(1) == std::vector<int>{0, 1});
  CHECK(is_free(plus).free);

  const auto reg = fixtures::regular(FiniteGroup::cyclic(2));
  const auto reg_plus = minimal_partial_unitization(reg);
  CHECK(is_free(reg_plus).free);
  CHECK_FALSE(reg_plus.is_global());
  CHECK_FALSE(is_free(minimal_partial_unitization(fixtures::ri2())).free);
}

TEST_CASE("random partial actions") {
  const auto G = FiniteGroup::symmetric(3);
  CHECK(random_partial_action(11, G, 9, 1.0).is_global());
  CHECK(random_partial_action(11, G, 9, 0.0).size() == 0);
  CHECK(random_partial_action(11, G, 9, 0.6) == random_partial_action(11, G, 9, 0.6));
  CHECK(is_free(random_partial_action(12, G, 12, 0.7, true)).free);
}

TEST_CASE("axioms and derived identities on the corpus") {
  for (int i = 0; i < 60; ++i) {
    const auto pa = corpus_instance(instance_seed(3, i));
    const FiniteGroup& G = pa.group();
    std::size_t arrows = 0;
    for (int g = 0; g < G.order(); ++g) arrows += pa.domain(g).size();
    const auto tg = translation_groupoid(pa);
    CHECK(tg.arrows.size() == arrows);
    CHECK(static_cast<int>(arrows) == pa.total_domain_size());

    for (int g = 0; g < G.order(); ++g) {
      const auto Xg = as_set(pa.domain(g));
      const auto Xginv = as_set(pa.domain(G.inv(g)));
      for (int h = 0; h < G.order(); ++h) {
        // theta_g(X_{g^-1} cap X_h) = X_g cap X_{gh}
        const auto lhs = image(pa, g, meet(Xginv, as_set(pa.domain(h))));
        CHECK(lhs == meet(Xg, as_set(pa.domain(G.mul(g, h)))));
        // 1_{gh} 1_g = alpha_g(1_h 1_{g^-1}) pointwise on X
        for (int x = 0; x < pa.size(); ++x) {
          const bool left = pa.in_domain(G.mul(g, h), x) && pa.in_domain(g, x);
          bool right = false;
          if (pa.in_domain(g, x)) {
            const int y = pa.apply(G.inv(g), x);
            right = pa.in_domain(h, y) && pa.in_domain(G.inv(g), y);
          }
          CHECK(left == right);
        }
      }
    }
    for (std::size_t k = 0; k < tg.orbits.size(); ++k)
      for (int x : tg.orbits[k]) CHECK(stabilizer_at(pa, x).order() == tg.stabilizers[k].order());
    const auto gr = globalize(pa);
    CHECK(verify_globalization(pa, gr).ok);
    CHECK(gr.envelope.is_global());
  }
}
