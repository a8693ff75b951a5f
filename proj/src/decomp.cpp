#include "pact/decomp.hpp"

#include <algorithm>
#include <stdexcept>

#include "pact/error.hpp"

namespace pact {

Tuple domain_tuple(const PartialAction& pa, int x) {
  if (x < 0 || x >= pa.size())
    throw Error(ErrorCode::PointOutOfRange, "point " + std::to_string(x), {x});
  Tuple tau;
  for (int g = 0; g < pa.group().order(); ++g)
    if (pa.in_domain(g, x)) tau.push_back(g);
  return tau;
}

namespace {

bool decomposable_by_sets(const PartialAction& pa, const TupleSpace& ts) {
  std::vector<char> covered(pa.size(), 0);
  for (const auto& tau : ts.tuples) {
    for (int x = 0; x < pa.size(); ++x) {
      bool in_tau = true;
      for (int g : tau) in_tau = in_tau && pa.in_domain(g, x);
      if (!in_tau) continue;
      covered[x] = 1;
      for (int g = 0; g < pa.group().order(); ++g)
        if (!std::binary_search(tau.begin(), tau.end(), g) && pa.in_domain(g, x)) return false;
    }
  }
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

}  // namespace

bool is_n_decomposable(const PartialAction& pa, int n) {
  if (n < 1 || n > pa.group().order())
    throw Error(ErrorCode::NOutOfRange, "n = " + std::to_string(n), {n});
  bool pointwise = true;
  for (int x = 0; x < pa.size(); ++x)
    pointwise = pointwise && static_cast<int>(domain_tuple(pa, x).size()) == n;
  const bool by_sets = decomposable_by_sets(pa, tuple_space(pa.group(), n));
  if (by_sets != pointwise)
    throw std::logic_error("n-decomposition criteria disagree for n = " + std::to_string(n));
  return pointwise;
}

int decomposition_degree(const PartialAction& pa) {
  if (pa.size() == 0) return 0;
  const int n = static_cast<int>(domain_tuple(pa, 0).size());
  return is_n_decomposable(pa, n) ? n : 0;
}

Stratification stratification(const PartialAction& pa) {
  const int N = pa.group().order();
  Stratification st;
  st.strata.assign(N, {});
  for (int x = 0; x < pa.size(); ++x) st.strata[domain_tuple(pa, x).size() - 1].push_back(x);
  std::vector<int> below = st.strata[0];
  for (int k = 2; k <= N; ++k) {
    std::vector<int> upto = below;
    upto.insert(upto.end(), st.strata[k - 1].begin(), st.strata[k - 1].end());
    std::sort(upto.begin(), upto.end());
    st.chain.push_back({k, restrict_to(pa, st.strata[k - 1]), restrict_to(pa, upto),
                        restrict_to(pa, below)});
    below = std::move(upto);
  }
  return st;
}

PartialAction reassemble(const PartialAction& pa, const Stratification& strat) {
  Restriction acc = restrict_to(pa, strat.strata.front());
  for (const auto& ext : strat.chain) {
    // glue the quotient we already have with the ideal part
    PartialAction glued = disjoint_union(acc.action, ext.ideal.action);
    std::vector<int> points = acc.points;
    points.insert(points.end(), ext.ideal.points.begin(), ext.ideal.points.end());
    acc = Restriction{std::move(glued), std::move(points)};
  }
  // acc.points[i] is the original index of local point i
  std::vector<int> perm(acc.points.size());
  std::vector<int> sorted = acc.points;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < acc.points.size(); ++i)
    perm[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), acc.points[i]) -
                               sorted.begin());
  if (sorted.size() != static_cast<std::size_t>(pa.size()))
    throw std::logic_error("strata do not cover the carrier");
  return permute_points(acc.action, perm);
}

std::vector<OrbitTypePart> orbit_type_decomposition(const PartialAction& pa, int n) {
  if (!is_n_decomposable(pa, n))
    throw Error(ErrorCode::NotDecomposable, "not " + std::to_string(n) + "-decomposable", {n});
  const TupleSpace ts = tuple_space(pa.group(), n);
  std::vector<OrbitTypePart> parts;
  for (std::size_t z = 0; z < ts.orbits.size(); ++z) {
    const Tuple& tau = ts.tuples[ts.section[z]];
    OrbitTypePart part{static_cast<int>(z), tau, {}, {}, stabilizer_and_section(ts, tau).stabilizer};
    for (int x = 0; x < pa.size(); ++x) {
      const Tuple t = domain_tuple(pa, x);
      if (ts.kappa[ts.index_of(t)] == static_cast<int>(z)) part.points.push_back(x);
      if (t == tau) part.x_tau.push_back(x);
    }
    if (!part.points.empty()) parts.push_back(std::move(part));
  }
  return parts;
}

GlobalSubsystem global_subsystem(const PartialAction& pa, const Tuple& tau) {
  const int n = static_cast<int>(tau.size());
  if (n < 1 || !is_n_decomposable(pa, n))
    throw Error(ErrorCode::NotDecomposable, "not " + std::to_string(n) + "-decomposable", {n});
  const TupleSpace ts = tuple_space(pa.group(), n);
  const auto hs = stabilizer_and_section(ts, tau);
  std::vector<int> points;
  for (int x = 0; x < pa.size(); ++x)
    if (domain_tuple(pa, x) == tau) points.push_back(x);
  if (points.empty()) throw Error(ErrorCode::EmptyStratum, "X_tau is empty");
  SubgroupAsGroup h = as_group(hs.stabilizer);
  std::vector<int> local(pa.size(), -1);
  for (std::size_t i = 0; i < points.size(); ++i) local[points[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> perm(h.group.order());
  std::vector<std::string> labels;
  for (int x : points) labels.push_back(pa.labels()[x]);
  for (int i = 0; i < h.group.order(); ++i)
    for (int x : points) perm[i].push_back(local[pa.apply(h.to_parent[i], x)]);
  return {PartialAction::global(h.group, perm, std::move(labels)), std::move(points), std::move(h)};
}

}  // namespace pact
