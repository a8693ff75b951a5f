#pragma once

#include "pact/paction.hpp"

namespace fixtures {

// cyclic(2) on {0,1,2}, swapping 0 and 1 and undefined at 2
inline pact::PartialAction ri1() {
  pact::PartialActionData d{pact::FiniteGroup::cyclic(2), 3, {}, {{0, 1, 2}, {0, 1}},
                            {{{0, 0}, {1, 1}, {2, 2}}, {{0, 1}, {1, 0}}}};
  return pact::PartialAction::validate(d);
}

// cyclic(2) fixing a single point
inline pact::PartialAction ri2() {
  pact::PartialActionData d{pact::FiniteGroup::cyclic(2), 1, {"p"}, {{0}, {0}}, {{{0, 0}}, {{0, 0}}}};
  return pact::PartialAction::validate(d);
}

// only the identity acts
inline pact::PartialAction trivial(int n, const pact::FiniteGroup& g = pact::FiniteGroup::cyclic(2)) {
  pact::PartialActionData d{g, n, {}, std::vector<std::vector<int>>(g.order()),
                            std::vector<std::vector<std::pair<int, int>>>(g.order())};
  for (int x = 0; x < n; ++x) {
    d.domains[0].push_back(x);
    d.maps[0].emplace_back(x, x);
  }
  return pact::PartialAction::validate(d);
}

// regular action of a group on itself
inline pact::PartialAction regular(const pact::FiniteGroup& g) {
  std::vector<std::vector<int>> perm(g.order(), std::vector<int>(g.order()));
  for (int a = 0; a < g.order(); ++a)
    for (int x = 0; x < g.order(); ++x) perm[a][x] = g.mul(a, x);
  return pact::PartialAction::global(g, perm);
}

}  // namespace fixtures
