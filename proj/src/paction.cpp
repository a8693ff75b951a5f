#include "pact/paction.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "pact/error.hpp"

namespace pact {

namespace {

std::string s(int v) { return std::to_string(v); }

struct UnionFind {
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> parent;
};

std::vector<std::string> default_labels(int n) {
  std::vector<std::string> out(n);
  for (int i = 0; i < n; ++i) out[i] = s(i);
  return out;
}

}  // namespace

PartialAction PartialAction::validate(const PartialActionData& raw) {
  const FiniteGroup& G = raw.group;
  const int N = G.order();
  const int n = raw.carrier_size;
  if (n < 0) throw Error(ErrorCode::PointOutOfRange, "negative carrier size");
  if (static_cast<int>(raw.domains.size()) != N || static_cast<int>(raw.maps.size()) != N)
    throw Error(ErrorCode::ElementOutOfRange, "domains and maps must be indexed by all of G");
  if (!raw.labels.empty() && static_cast<int>(raw.labels.size()) != n)
    throw Error(ErrorCode::PointOutOfRange, "label count differs from carrier size");

  PartialAction pa(G, n);
  pa.labels_ = raw.labels.empty() ? default_labels(n) : raw.labels;
  pa.domains_.assign(N, {});
  std::vector<char> member(static_cast<std::size_t>(N) * n, 0);
  for (int g = 0; g < N; ++g) {
    for (int x : raw.domains[g]) {
      if (x < 0 || x >= n)
        throw Error(ErrorCode::PointOutOfRange, "domain of " + s(g) + " lists point " + s(x),
                    {g, x});
      if (member[pa.index(g, x)])
        throw Error(ErrorCode::NotBijective, "domain of " + s(g) + " repeats point " + s(x),
                    {g, x});
      member[pa.index(g, x)] = 1;
      pa.domains_[g].push_back(x);
    }
    std::sort(pa.domains_[g].begin(), pa.domains_[g].end());
  }
  if (static_cast<int>(pa.domains_[0].size()) != n) {
    int missing = 0;
    while (missing < n && member[pa.index(0, missing)]) ++missing;
    throw Error(ErrorCode::IdentityDomainNotFull, "point " + s(missing) + " is not in X_1",
                {missing});
  }

  pa.map_.assign(static_cast<std::size_t>(N) * n, -1);
  for (int g = 0; g < N; ++g) {
    const int gi = G.inv(g);
    std::vector<char> hit(n, 0);
    for (auto [x, y] : raw.maps[g]) {
      if (x < 0 || x >= n || y < 0 || y >= n)
        throw Error(ErrorCode::PointOutOfRange, "map of " + s(g) + " has pair out of range",
                    {g, x, y});
      if (!member[pa.index(gi, x)] || !member[pa.index(g, y)] || pa.map_[pa.index(g, x)] >= 0 ||
          hit[y])
        throw Error(ErrorCode::NotBijective,
                    "theta_" + s(g) + " is not a bijection X_{g^-1} -> X_g at (" + s(x) + "," +
                        s(y) + ")",
                    {g});
      pa.map_[pa.index(g, x)] = y;
      hit[y] = 1;
    }
    if (raw.maps[g].size() != pa.domains_[gi].size() ||
        pa.domains_[gi].size() != pa.domains_[g].size())
      throw Error(ErrorCode::NotBijective,
                  "theta_" + s(g) + " is not defined on all of X_{g^-1} or misses X_g", {g});
  }
  for (int x = 0; x < n; ++x)
    if (pa.map_[pa.index(0, x)] != x)
      throw Error(ErrorCode::IdentityMapNotIdentity, "theta_1 moves " + s(x), {x});
  for (int g = 0; g < N; ++g) {
    const int gi = G.inv(g);
    for (int x : pa.domains_[gi])
      if (pa.map_[pa.index(gi, pa.map_[pa.index(g, x)])] != x)
        throw Error(ErrorCode::InverseMismatch,
                    "theta_{g^-1} is not the inverse of theta_g for g = " + s(g), {g});
  }
  for (int g = 0; g < N; ++g) {
    for (int h = 0; h < N; ++h) {
      const int gh = G.mul(g, h);
      for (int x = 0; x < n; ++x) {
        const int hx = pa.map_[pa.index(h, x)];
        if (hx < 0) continue;
        const int ghx = pa.map_[pa.index(g, hx)];
        if (ghx < 0) continue;
        if (pa.map_[pa.index(gh, x)] != ghx)
          throw Error(ErrorCode::CompositionViolation,
                      "theta_g(theta_h(x)) != theta_gh(x) at (g,h,x) = (" + s(g) + "," + s(h) +
                          "," + s(x) + ")",
                      {g, h, x});
      }
    }
  }
  return pa;
}

PartialAction PartialAction::global(const FiniteGroup& group,
                                    const std::vector<std::vector<int>>& perm,
                                    std::vector<std::string> labels) {
  PartialActionData d{group, perm.empty() ? 0 : static_cast<int>(perm[0].size()),
                      std::move(labels), {}, {}};
  d.domains.assign(group.order(), {});
  d.maps.assign(group.order(), {});
  for (int g = 0; g < group.order(); ++g) {
    for (int x = 0; x < d.carrier_size; ++x) {
      d.domains[g].push_back(x);
      d.maps[g].emplace_back(x, perm[g][x]);
    }
  }
  return validate(d);
}

bool PartialAction::is_global() const {
  for (const auto& d : domains_)
    if (static_cast<int>(d.size()) != n_) return false;
  return true;
}

int PartialAction::total_domain_size() const {
  int total = 0;
  for (const auto& d : domains_) total += static_cast<int>(d.size());
  return total;
}

PartialActionData PartialAction::data() const {
  PartialActionData d{group_, n_, labels_, domains_, {}};
  d.maps.assign(group_.order(), {});
  for (int g = 0; g < group_.order(); ++g)
    for (int x = 0; x < n_; ++x)
      if (defined(g, x)) d.maps[g].emplace_back(x, apply(g, x));
  return d;
}

FreenessResult is_free(const PartialAction& pa) {
  for (int g = 1; g < pa.group().order(); ++g)
    for (int x = 0; x < pa.size(); ++x)
      if (pa.apply(g, x) == x) return {false, std::make_pair(g, x)};
  return {};
}

Subgroup stabilizer_at(const PartialAction& pa, int x) {
  if (x < 0 || x >= pa.size()) throw Error(ErrorCode::PointOutOfRange, "point " + s(x), {x});
  std::vector<int> members;
  for (int g = 0; g < pa.group().order(); ++g)
    if (pa.apply(g, x) == x) members.push_back(g);
  return Subgroup{pa.group(), std::move(members)};
}

TranslationGroupoid translation_groupoid(const PartialAction& pa) {
  TranslationGroupoid tg;
  UnionFind uf(pa.size());
  for (int g = 0; g < pa.group().order(); ++g) {
    for (int x : pa.domain(pa.group().inv(g))) {
      const int y = pa.apply(g, x);
      tg.arrows.push_back({g, x, y});
      uf.unite(x, y);
    }
  }
  tg.orbit_of.assign(pa.size(), -1);
  for (int x = 0; x < pa.size(); ++x) {
    const int r = uf.find(x);
    if (tg.orbit_of[r] < 0) {
      tg.orbit_of[r] = static_cast<int>(tg.orbits.size());
      tg.orbits.emplace_back();
    }
    tg.orbit_of[x] = tg.orbit_of[r];
    tg.orbits[tg.orbit_of[x]].push_back(x);
  }
  for (const auto& orbit : tg.orbits) tg.stabilizers.push_back(stabilizer_at(pa, orbit.front()));
  return tg;
}

Restriction restrict_to(const PartialAction& pa, std::vector<int> subset) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  std::vector<int> local(pa.size(), -1);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    const int x = subset[i];
    if (x < 0 || x >= pa.size()) throw Error(ErrorCode::PointOutOfRange, "point " + s(x), {x});
    local[x] = static_cast<int>(i);
  }
  const int N = pa.group().order();
  for (int g = 0; g < N; ++g) {
    for (int x = 0; x < pa.size(); ++x) {
      const int y = pa.apply(g, x);
      if (y >= 0 && (local[x] >= 0) != (local[y] >= 0))
        throw Error(ErrorCode::NotInvariant,
                    "arrow (" + s(g) + ", " + s(x) + " -> " + s(y) + ") crosses the boundary",
                    {g, x, y});
    }
  }
  PartialActionData d{pa.group(), static_cast<int>(subset.size()), {}, {}, {}};
  d.domains.assign(N, {});
  d.maps.assign(N, {});
  for (int x : subset) d.labels.push_back(pa.labels()[x]);
  for (int g = 0; g < N; ++g) {
    for (int x : pa.domain(g))
      if (local[x] >= 0) d.domains[g].push_back(local[x]);
    for (int x : subset)
      if (pa.defined(g, x)) d.maps[g].emplace_back(local[x], local[pa.apply(g, x)]);
  }
  return {PartialAction::validate(d), std::move(subset)};
}

std::pair<Restriction, Restriction> restrict_and_quotient(const PartialAction& pa,
                                                          const std::vector<int>& subset) {
  Restriction inside = restrict_to(pa, subset);
  std::vector<char> in(pa.size(), 0);
  for (int x : inside.points) in[x] = 1;
  std::vector<int> rest;
  for (int x = 0; x < pa.size(); ++x)
    if (!in[x]) rest.push_back(x);
  return {std::move(inside), restrict_to(pa, rest)};
}

PartialAction disjoint_union(const PartialAction& a, const PartialAction& b) {
  if (!(a.group() == b.group()))
    throw Error(ErrorCode::ShapeMismatch, "disjoint union needs a common group");
  auto da = a.data();
  const auto db = b.data();
  const int off = da.carrier_size;
  da.carrier_size += db.carrier_size;
  for (const auto& l : db.labels) da.labels.push_back(l + "'");
  for (int g = 0; g < a.group().order(); ++g) {
    for (int x : db.domains[g]) da.domains[g].push_back(x + off);
    for (auto [x, y] : db.maps[g]) da.maps[g].emplace_back(x + off, y + off);
  }
  return PartialAction::validate(da);
}

PartialAction permute_points(const PartialAction& pa, const std::vector<int>& perm) {
  auto d = pa.data();
  std::vector<std::string> labels(d.carrier_size);
  for (int x = 0; x < d.carrier_size; ++x) labels[perm[x]] = d.labels[x];
  d.labels = std::move(labels);
  for (auto& dom : d.domains)
    for (int& x : dom) x = perm[x];
  for (auto& m : d.maps)
    for (auto& [x, y] : m) {
      x = perm[x];
      y = perm[y];
    }
  return PartialAction::validate(d);
}

GlobalizationResult globalize(const PartialAction& pa) {
  const FiniteGroup& G = pa.group();
  const int N = G.order();
  const int n = pa.size();
  auto pair_index = [n](int g, int x) { return g * n + x; };
  UnionFind uf(N * n);
  for (int g = 0; g < N; ++g)
    for (int x = 0; x < n; ++x)
      for (int k = 0; k < N; ++k)
        if (pa.in_domain(k, x)) uf.unite(pair_index(g, x), pair_index(G.mul(g, k), pa.apply(G.inv(k), x)));

  std::vector<int> class_of(N * n, -1);
  std::vector<int> root_id(N * n, -1);
  int count = 0;
  for (int i = 0; i < N * n; ++i) {
    const int r = uf.find(i);
    if (root_id[r] < 0) root_id[r] = count++;
    class_of[i] = root_id[r];
  }
  std::vector<std::vector<int>> perm(N, std::vector<int>(count, -1));
  std::vector<std::string> labels(count);
  std::vector<char> labelled(count, 0);
  for (int h = 0; h < N; ++h) {
    for (int x = 0; x < n; ++x) {
      const int c = class_of[pair_index(h, x)];
      if (!labelled[c]) {
        labels[c] = "[" + s(h) + "," + pa.labels()[x] + "]";
        labelled[c] = 1;
      }
      for (int g = 0; g < N; ++g) perm[g][c] = class_of[pair_index(G.mul(g, h), x)];
    }
  }
  GlobalizationResult gr{PartialAction::global(G, perm, std::move(labels)), {}, {}};
  for (int x = 0; x < n; ++x) gr.embedding.push_back(class_of[pair_index(0, x)]);
  gr.splitting = central_splitting(gr.envelope, gr.embedding);
  return gr;
}

std::vector<std::vector<int>> central_splitting(const PartialAction& envelope,
                                                const std::vector<int>& embedding) {
  const FiniteGroup& G = envelope.group();
  const int N = G.order();
  const int m = envelope.size();
  std::vector<char> in_image(m, 0);
  for (int y : embedding) in_image[y] = 1;
  // translate[g][y]: y in sigma_g(iota X)
  std::vector<std::vector<char>> translate(N, std::vector<char>(m, 0));
  for (int g = 0; g < N; ++g)
    for (int y = 0; y < m; ++y)
      if (in_image[y]) translate[g][envelope.apply(g, y)] = 1;
  std::vector<std::vector<int>> p(N);
  std::vector<char> later(m, 0);  // union of sigma_{g_j}(iota X) for j > k
  for (int k = N - 1; k >= 0; --k) {
    for (int y = 0; y < m; ++y)
      if (translate[k][y] && !later[y]) p[k].push_back(envelope.apply(G.inv(k), y));
    for (int y = 0; y < m; ++y)
      if (translate[k][y]) later[y] = 1;
    std::sort(p[k].begin(), p[k].end());
  }
  return p;
}

CheckResult verify_globalization(const PartialAction& pa, const GlobalizationResult& gr) {
  const FiniteGroup& G = pa.group();
  const auto& Y = gr.envelope;
  const int m = Y.size();
  if (!Y.is_global()) return {false, "envelope is not global"};
  if (static_cast<int>(gr.embedding.size()) != pa.size()) return {false, "embedding size"};
  std::vector<int> preimage(m, -1);
  for (int x = 0; x < pa.size(); ++x) {
    const int y = gr.embedding[x];
    if (y < 0 || y >= m || preimage[y] >= 0) return {false, "embedding is not injective"};
    preimage[y] = x;
  }
  for (int g = 0; g < G.order(); ++g) {
    for (int x = 0; x < pa.size(); ++x) {
      const bool lhs = pa.in_domain(g, x);
      const int back = Y.apply(G.inv(g), gr.embedding[x]);
      const bool rhs = preimage[back] >= 0;  // iota(x) in sigma_g(iota X)
      if (lhs != rhs) return {false, "iota(X_g) != iota(X) cap sigma_g(iota X) at g=" + s(g)};
      if (pa.defined(g, x) && Y.apply(g, gr.embedding[x]) != gr.embedding[pa.apply(g, x)])
        return {false, "sigma_g does not extend theta_g at g=" + s(g)};
    }
  }
  std::vector<int> cover(m, 0);
  std::vector<char> reached(m, 0);
  for (int g = 0; g < G.order(); ++g) {
    for (int x = 0; x < pa.size(); ++x) reached[Y.apply(g, gr.embedding[x])] = 1;
    if (gr.splitting.size() != static_cast<std::size_t>(G.order()))
      return {false, "splitting must have one set per group element"};
    for (int y : gr.splitting[g]) {
      if (preimage[y] < 0) return {false, "p_g not inside iota(X)"};
      ++cover[Y.apply(g, y)];
    }
  }
  for (int y = 0; y < m; ++y) {
    if (!reached[y]) return {false, "Y is not the union of translates of iota(X)"};
    if (cover[y] != 1) return {false, "translates of the splitting do not partition Y"};
  }
  return {};
}

CheckResult check_globalization_uniqueness(const PartialAction& pa,
                                           const GlobalizationResult& gr) {
  const FiniteGroup& G = pa.group();
  const int N = G.order();
  const int n = pa.size();
  // second pass: the class of (g,x) is {(gk, theta_{k^-1}(x)) : x in X_k}
  auto canonical = [&](int g, int x) {
    int best = g * n + x;
    for (int k = 0; k < N; ++k)
      if (pa.in_domain(k, x)) best = std::min(best, G.mul(g, k) * n + pa.apply(G.inv(k), x));
    return best;
  };
  const auto& Y = gr.envelope;
  std::vector<int> image(Y.size(), -1);
  std::map<int, int> used;
  for (int g = 0; g < N; ++g) {
    for (int x = 0; x < n; ++x) {
      const int y = Y.apply(g, gr.embedding[x]);
      const int c = canonical(g, x);
      if (image[y] >= 0 && image[y] != c) return {false, "classes disagree at Y point " + s(y)};
      image[y] = c;
    }
  }
  for (int y = 0; y < Y.size(); ++y) {
    if (image[y] < 0) return {false, "point outside the translates"};
    if (!used.emplace(image[y], y).second) return {false, "two Y points share a class"};
  }
  // classes must exhaust G x X
  std::vector<char> seen(N * n, 0);
  int distinct = 0;
  for (int g = 0; g < N; ++g)
    for (int x = 0; x < n; ++x)
      if (!seen[canonical(g, x)]++) ++distinct;
  if (distinct != Y.size()) return {false, "size mismatch between constructions"};
  for (int h = 0; h < N; ++h)
    for (int g = 0; g < N; ++g)
      for (int x = 0; x < n; ++x) {
        const int y = Y.apply(g, gr.embedding[x]);
        if (image[Y.apply(h, y)] != canonical(G.mul(h, g), x))
          return {false, "bijection is not equivariant"};
      }
  return {};
}

PartialAction minimal_partial_unitization(const PartialAction& pa) {
  auto d = pa.data();
  const int inf = d.carrier_size++;
  d.labels.push_back("inf");
  d.domains[0].push_back(inf);
  d.maps[0].emplace_back(inf, inf);
  return PartialAction::validate(d);
}

PartialAction random_partial_action(std::uint64_t seed, const FiniteGroup& group,
                                    int ambient_size, double keep_probability, bool free_ambient) {
  if (ambient_size < 0) throw Error(ErrorCode::PointOutOfRange, "negative ambient size");
  if (!(keep_probability >= 0.0 && keep_probability <= 1.0))
    throw Error(ErrorCode::PreconditionViolated, "keep probability outside [0,1]");
  std::mt19937_64 rng(seed);
  const auto subgroups = all_subgroups(group);
  const int N = group.order();
  std::vector<std::vector<int>> perm(N);
  int size = 0;
  while (size < ambient_size) {
    std::vector<const Subgroup*> fitting;
    for (const auto& h : subgroups)
      if (free_ambient ? h.is_trivial() : N / h.order() <= ambient_size - size) fitting.push_back(&h);
    const Subgroup& h = *fitting[std::uniform_int_distribution<std::size_t>(
        0, fitting.size() - 1)(rng)];
    const auto cosets = coset_decomposition(h, CosetSide::Left);
    // coset of g is the block containing g; g'.(gH) = (g'g)H
    std::vector<int> coset_of(N);
    for (std::size_t c = 0; c < cosets.size(); ++c)
      for (int g : cosets[c]) coset_of[g] = static_cast<int>(c);
    for (int g = 0; g < N; ++g)
      for (const auto& block : cosets)
        perm[g].push_back(size + coset_of[group.mul(g, block.front())]);
    size += static_cast<int>(cosets.size());
  }
  std::bernoulli_distribution keep(keep_probability);
  std::vector<int> kept;
  std::vector<int> local(size, -1);
  for (int y = 0; y < size; ++y) {
    if (keep(rng)) {
      local[y] = static_cast<int>(kept.size());
      kept.push_back(y);
    }
  }
  PartialActionData d{group, static_cast<int>(kept.size()), {}, {}, {}};
  d.domains.assign(N, {});
  d.maps.assign(N, {});
  for (int g = 0; g < N; ++g) {
    for (int y : kept) {
      const int gy = perm[g][y];
      if (local[gy] >= 0) {
        d.maps[g].emplace_back(local[y], local[gy]);
        d.domains[g].push_back(local[gy]);
      }
    }
  }
  return PartialAction::validate(d);
}

}  // namespace pact
