#include "pact/tuples.hpp"

#include <algorithm>

#include "pact/error.hpp"

namespace pact {

Tuple translate(const FiniteGroup& group, int g, const Tuple& tau) {
  Tuple out;
  out.reserve(tau.size());
  for (int t : tau) out.push_back(group.mul(g, t));
  std::sort(out.begin(), out.end());
  return out;
}

int TupleSpace::index_of(const Tuple& tau) const {
  auto it = std::lower_bound(tuples.begin(), tuples.end(), tau);
  return (it != tuples.end() && *it == tau) ? static_cast<int>(it - tuples.begin()) : -1;
}

namespace {

void combinations(int next, int order, int remaining, Tuple& current, std::vector<Tuple>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  for (int g = next; g <= order - remaining; ++g) {
    current.push_back(g);
    combinations(g + 1, order, remaining - 1, current, out);
    current.pop_back();
  }
}

PartialAction build_lt(const FiniteGroup& group, const std::vector<Tuple>& tuples,
                       const TupleSpace& lookup) {
  const int N = group.order();
  PartialActionData d{group, static_cast<int>(tuples.size()), {}, {}, {}};
  d.domains.assign(N, {});
  d.maps.assign(N, {});
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    std::string label = "{";
    for (std::size_t k = 0; k < tuples[i].size(); ++k)
      label += (k ? "," : "") + std::to_string(tuples[i][k]);
    d.labels.push_back(label + "}");
  }
  for (int g = 0; g < N; ++g) {
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      const auto& tau = tuples[i];
      if (std::binary_search(tau.begin(), tau.end(), g)) d.domains[g].push_back(static_cast<int>(i));
      if (std::binary_search(tau.begin(), tau.end(), group.inv(g)))
        d.maps[g].emplace_back(static_cast<int>(i), lookup.index_of(translate(group, g, tau)));
    }
  }
  return PartialAction::validate(d);
}

}  // namespace

TupleSpace tuple_space(const FiniteGroup& group, int n) {
  if (n < 1 || n > group.order())
    throw Error(ErrorCode::NOutOfRange,
                "n = " + std::to_string(n) + " outside 1.." + std::to_string(group.order()), {n});
  std::vector<Tuple> tuples;
  Tuple current{0};
  combinations(1, group.order(), n - 1, current, tuples);
  // lt is assigned below; start from the trivial placeholder the struct needs
  TupleSpace ts{group, n, std::move(tuples),
                PartialAction::global(FiniteGroup::cyclic(1), {{}}), {}, {}, {}};
  ts.lt = build_lt(group, ts.tuples, ts);
  const auto tg = translation_groupoid(ts.lt);
  ts.orbits = tg.orbits;
  ts.kappa = tg.orbit_of;
  for (const auto& orbit : ts.orbits) ts.section.push_back(orbit.front());
  return ts;
}

StabilizerSection stabilizer_and_section(const TupleSpace& ts, const Tuple& tau) {
  if (ts.index_of(tau) < 0) throw Error(ErrorCode::TupleNotInSpace, "tuple not in T_n(G)");
  const FiniteGroup& G = ts.group;
  std::vector<int> h;
  for (int g = 0; g < G.order(); ++g)
    if (translate(G, g, tau) == tau) h.push_back(g);
  StabilizerSection out{make_subgroup(G, h), 0, {}};
  out.m = ts.n / out.stabilizer.order() - 1;
  std::vector<char> covered(G.order(), 0);
  for (int x : tau) {
    if (covered[x]) continue;
    out.representatives.push_back(x);
    for (int k : out.stabilizer.members) covered[G.mul(k, x)] = 1;
  }
  return out;
}

std::vector<Tuple> orbit_of(const TupleSpace& ts, const Tuple& tau) {
  if (ts.index_of(tau) < 0) throw Error(ErrorCode::TupleNotInSpace, "tuple not in T_n(G)");
  std::vector<Tuple> out;
  for (int t : tau) out.push_back(translate(ts.group, ts.group.inv(t), tau));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace pact
