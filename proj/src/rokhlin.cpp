#include "pact/rokhlin.hpp"

#include <algorithm>
#include <future>
#include <sstream>
#include <stdexcept>

namespace pact {

Vector<Rational> TowerCertificate::tower(const PartialAction& pa, int g, int j) const {
  Vector<Rational> f = Vector<Rational>::Zero(pa.size());
  const int back = pa.group().inv(g);
  for (int x : pa.domain(g)) f(x) = levels[j](pa.apply(back, x));
  return f;
}

std::vector<std::vector<Vector<Rational>>> TowerCertificate::towers(const PartialAction& pa) const {
  std::vector<std::vector<Vector<Rational>>> out(levels.size());
  for (std::size_t j = 0; j < levels.size(); ++j)
    for (int g = 0; g < pa.group().order(); ++g) out[j].push_back(tower(pa, g, static_cast<int>(j)));
  return out;
}

TowerCertificate TowerCertificate::padded() const {
  TowerCertificate out = *this;
  out.d = d + 1;
  out.levels.push_back(Vector<Rational>::Zero(levels.empty() ? 0 : levels.front().size()));
  return out;
}

namespace {

// One groupoid orbit in local coordinates. incoming[x] lists the sources
// theta_{g^-1}(x) for g with x in X_g, with multiplicity.
struct OrbitProblem {
  std::vector<int> points;
  std::vector<std::vector<int>> incoming;
  std::vector<char> candidate;            // never reaches a point twice
  std::vector<std::vector<int>> reaches;  // x with y in incoming[x]
  std::vector<std::vector<char>> conflict;
};

OrbitProblem make_problem(const PartialAction& pa, const std::vector<int>& orbit) {
  OrbitProblem p;
  p.points = orbit;
  const int n = static_cast<int>(orbit.size());
  std::vector<int> local(pa.size(), -1);
  for (int i = 0; i < n; ++i) local[orbit[i]] = i;
  p.incoming.resize(n);
  p.candidate.assign(n, 1);
  p.reaches.resize(n);
  p.conflict.assign(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) {
    const int x = orbit[i];
    for (int g = 0; g < pa.group().order(); ++g)
      if (pa.in_domain(g, x)) p.incoming[i].push_back(local[pa.apply(pa.group().inv(g), x)]);
    auto in = p.incoming[i];
    std::sort(in.begin(), in.end());
    for (std::size_t a = 0; a < in.size(); ++a) {
      if (a + 1 < in.size() && in[a] == in[a + 1]) p.candidate[in[a]] = 0;
      if (a == 0 || in[a] != in[a - 1]) p.reaches[in[a]].push_back(i);
      for (std::size_t b = a + 1; b < in.size(); ++b)
        if (in[a] != in[b]) p.conflict[in[a]][in[b]] = p.conflict[in[b]][in[a]] = 1;
    }
  }
  return p;
}

std::string fraction_note(double explored, double total) {
  std::ostringstream os;
  os << "explored fraction " << (total > 0 ? explored / total : 1.0) << " (" << explored << " of "
     << total << ")";
  return os.str();
}

// Algorithm X: every point must be reached exactly once from the chosen set.
struct ExactCover {
  const OrbitProblem& p;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::vector<int> covered;
  std::vector<int> chosen;

  bool search() {
    if (++nodes > budget) throw Error(ErrorCode::SearchBudgetExceeded, "exact cover node budget", {p.points.front()});
    const int n = static_cast<int>(p.points.size());
    int column = -1, best = n + 1;
    for (int x = 0; x < n; ++x) {
      if (covered[x]) continue;
      int options = 0;
      for (int y : p.incoming[x])
        if (usable(y)) ++options;
      if (options < best) {
        best = options;
        column = x;
      }
    }
    if (column < 0) return true;
    if (best == 0) return false;
    std::vector<int> ys;
    for (int y : p.incoming[column])
      if (usable(y)) ys.push_back(y);
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    for (int y : ys) {
      for (int x : p.reaches[y]) covered[x] = 1;
      chosen.push_back(y);
      if (search()) return true;
      chosen.pop_back();
      for (int x : p.reaches[y]) covered[x] = 0;
    }
    return false;
  }

  bool usable(int y) const {
    if (!p.candidate[y]) return false;
    for (int x : p.reaches[y])
      if (covered[x]) return false;
    return true;
  }
};

void bron_kerbosch(const OrbitProblem& p, std::vector<int>& r, std::vector<int> P, std::vector<int> X,
                   std::vector<std::vector<int>>& out) {
  if (P.empty() && X.empty()) {
    auto s = r;
    std::sort(s.begin(), s.end());
    out.push_back(s);
    return;
  }
  auto compatible = [&](int a, int b) { return a != b && !p.conflict[a][b]; };
  int pivot = P.empty() ? X.front() : P.front();
  std::size_t best = 0;
  for (const auto* set : {&P, &X})
    for (int u : *set) {
      std::size_t k = 0;
      for (int v : P) k += compatible(u, v);
      if (k > best) {
        best = k;
        pivot = u;
      }
    }
  const std::vector<int> branch = [&] {
    std::vector<int> b;
    for (int v : P)
      if (!compatible(pivot, v)) b.push_back(v);
    return b;
  }();
  for (int v : branch) {
    std::vector<int> P2, X2;
    for (int u : P)
      if (compatible(u, v)) P2.push_back(u);
    for (int u : X)
      if (compatible(u, v)) X2.push_back(u);
    r.push_back(v);
    bron_kerbosch(p, r, P2, X2, out);
    r.pop_back();
    P.erase(std::find(P.begin(), P.end(), v));
    X.push_back(v);
  }
}

std::vector<std::vector<int>> maximal_supports(const OrbitProblem& p) {
  std::vector<int> vertices;
  for (int y = 0; y < static_cast<int>(p.points.size()); ++y)
    if (p.candidate[y]) vertices.push_back(y);
  std::vector<std::vector<int>> out;
  std::vector<int> r;
  bron_kerbosch(p, r, vertices, {}, out);
  std::sort(out.begin(), out.end());
  return out;
}

double multiset_count(double items, int picks) {
  double c = 1.0;
  for (int k = 1; k <= picks; ++k) c = c * (items + k - 1) / k;
  return c;
}

struct OrbitOutcome {
  bool found = false;
  std::vector<std::vector<Rational>> levels;  // [j][local point]
  std::vector<std::vector<int>> supports;
  std::uint64_t patterns = 0;
};

std::optional<std::vector<std::vector<Rational>>> solve_pattern(
    const OrbitProblem& p, const std::vector<const std::vector<int>*>& pattern) {
  const int n = static_cast<int>(p.points.size());
  std::vector<std::vector<int>> column(pattern.size(), std::vector<int>(n, -1));
  int vars = 0;
  for (std::size_t j = 0; j < pattern.size(); ++j)
    for (int y : *pattern[j]) column[j][y] = vars++;
  Matrix<Rational> A = Matrix<Rational>::Zero(n, vars);
  for (int x = 0; x < n; ++x)
    for (std::size_t j = 0; j < pattern.size(); ++j)
      for (int y : p.incoming[x])
        if (column[j][y] >= 0) A(x, column[j][y]) += 1;
  const Vector<Rational> b = Vector<Rational>::Ones(n);
  const Vector<Rational> upper = Vector<Rational>::Constant(vars, Rational(-1));
  auto sol = find_feasible_point<Rational>(A, b, upper);
  if (!sol) return std::nullopt;
  std::vector<std::vector<Rational>> levels(pattern.size(), std::vector<Rational>(n, Rational(0)));
  for (std::size_t j = 0; j < pattern.size(); ++j)
    for (int y = 0; y < n; ++y)
      if (column[j][y] >= 0) levels[j][y] = (*sol)(column[j][y]);
  return levels;
}

OrbitOutcome solve_orbit(const PartialAction& pa, const std::vector<int>& orbit, int d,
                         const SearchOptions& options) {
  const OrbitProblem p = make_problem(pa, orbit);
  const int n = static_cast<int>(orbit.size());
  OrbitOutcome out;
  if (d == 0 && options.exact_cover_at_zero) {
    ExactCover ec{p, options.budget, 0, std::vector<int>(n, 0), {}};
    out.found = ec.search();
    out.patterns = ec.nodes;
    if (out.found) {
      out.levels.assign(1, std::vector<Rational>(n, Rational(0)));
      for (int y : ec.chosen) out.levels[0][y] = 1;
    }
    return out;
  }
  out.supports = maximal_supports(p);
  const int m = static_cast<int>(out.supports.size());
  const double total = multiset_count(m, d + 1);
  std::vector<int> idx(d + 1, 0);
  while (true) {
    if (out.patterns >= options.budget)
      throw Error(ErrorCode::SearchBudgetExceeded,
                  fraction_note(static_cast<double>(out.patterns), total), {orbit.front()});
    ++out.patterns;
    std::vector<const std::vector<int>*> pattern;
    for (int i : idx) pattern.push_back(&out.supports[i]);
    if (auto levels = solve_pattern(p, pattern)) {
      out.found = true;
      out.levels = std::move(*levels);
      return out;
    }
    // next nondecreasing index tuple
    int k = d;
    while (k >= 0 && idx[k] == m - 1) --k;
    if (k < 0) break;
    ++idx[k];
    for (int t = k + 1; t <= d; ++t) idx[t] = idx[k];
  }
  return out;
}

}  // namespace

TowerSearchResult towers_exist(const PartialAction& pa, int d, const SearchOptions& options) {
  if (d < 0) throw std::invalid_argument("d must be non-negative");
  const auto tg = translation_groupoid(pa);
  std::vector<std::size_t> order(tg.orbits.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (options.reverse_orbit_order) std::reverse(order.begin(), order.end());

  std::vector<OrbitOutcome> outcomes(order.size());
  if (options.threads > 1 && order.size() > 1) {
    std::vector<std::future<OrbitOutcome>> jobs;
    for (std::size_t k = 0; k < order.size(); ++k)
      jobs.push_back(std::async(std::launch::async, solve_orbit, std::cref(pa),
                                std::cref(tg.orbits[order[k]]), d, std::cref(options)));
    for (std::size_t k = 0; k < order.size(); ++k) outcomes[k] = jobs[k].get();
  } else {
    for (std::size_t k = 0; k < order.size(); ++k) {
      outcomes[k] = solve_orbit(pa, tg.orbits[order[k]], d, options);
      if (!outcomes[k].found) break;
    }
  }

  TowerCertificate cert;
  cert.d = d;
  cert.levels.assign(d + 1, Vector<Rational>::Zero(pa.size()));
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& orbit = tg.orbits[order[k]];
    const auto& o = outcomes[k];
    if (!o.found) return NonexistenceProof{d, orbit, o.supports, o.patterns};
    for (int j = 0; j <= d; ++j)
      for (std::size_t i = 0; i < orbit.size(); ++i) cert.levels[j](orbit[i]) = o.levels[j][i];
  }
  return cert;
}

RokhlinDimension rokhlin_dimension(const PartialAction& pa, const SearchOptions& options) {
  RokhlinDimension out;
  out.free = is_free(pa).free;
  for (int d = 0; d < pa.group().order(); ++d) {
    auto r = towers_exist(pa, d, options);
    if (auto* cert = std::get_if<TowerCertificate>(&r)) {
      out.value = d;
      out.commuting = d;
      out.certificate = std::move(*cert);
      return out;
    }
  }
  if (out.free) throw std::logic_error("free partial action without towers below |G|");
  return out;
}

CertificateCheck verify_certificate(const PartialAction& pa, const TowerCertificate& cert) {
  const FiniteGroup& G = pa.group();
  const int n = pa.size();
  const int N = G.order();
  auto fail = [](std::string condition, std::vector<int> witness, std::string detail) {
    return CertificateCheck{false, std::move(condition), std::move(witness), std::move(detail)};
  };
  if (cert.d < 0 || static_cast<int>(cert.levels.size()) != cert.d + 1)
    return fail("range", {}, "level count does not match d");
  for (const auto& level : cert.levels)
    if (level.size() != n) return fail("range", {}, "level has the wrong size");
  const auto f = cert.towers(pa);
  for (int j = 0; j <= cert.d; ++j)
    for (int g = 0; g < N; ++g)
      for (int x = 0; x < n; ++x) {
        if (f[j][g](x) < 0 || f[j][g](x) > 1) return fail("range", {j, g, x}, "value outside [0,1]");
        if (f[j][g](x) != 0 && !pa.in_domain(g, x)) return fail("support", {j, g, x}, "outside X_g");
      }
  // C1: f_{gh}(theta_g y) = f_h(y) for y in X_{g^-1} cap X_h
  for (int j = 0; j <= cert.d; ++j)
    for (int g = 0; g < N; ++g)
      for (int h = 0; h < N; ++h)
        for (int y : pa.domain(G.inv(g)))
          if (pa.in_domain(h, y) && f[j][G.mul(g, h)](pa.apply(g, y)) != f[j][h](y))
            return fail("C1", {j, g, h, y}, "equivariance");
  for (int j = 0; j <= cert.d; ++j)
    for (int g = 0; g < N; ++g)
      for (int h = g + 1; h < N; ++h)
        for (int x = 0; x < n; ++x)
          if (f[j][g](x) * f[j][h](x) != 0) return fail("C2", {j, g, h, x}, "orthogonality");
  for (int x = 0; x < n; ++x) {
    Rational s = 0;
    for (int j = 0; j <= cert.d; ++j)
      for (int g = 0; g < N; ++g) s += f[j][g](x);
    if (s != 1) return fail("C3", {x}, "sum is " + to_fraction_string(s));
  }

  // raw conditions with test elements: indicators of points and the unit
  std::vector<Vector<Rational>> tests;
  for (int x = 0; x < n; ++x) {
    Vector<Rational> e = Vector<Rational>::Zero(n);
    e(x) = 1;
    tests.push_back(e);
  }
  tests.push_back(Vector<Rational>::Ones(n));
  auto alpha = [&](int g, const Vector<Rational>& v) {
    Vector<Rational> out = Vector<Rational>::Zero(n);
    for (int x : pa.domain(g)) out(x) = v(pa.apply(G.inv(g), x));
    return out;
  };
  auto in_ideal = [&](int g, const Vector<Rational>& v) {
    for (int x = 0; x < n; ++x)
      if (v(x) != 0 && !pa.in_domain(g, x)) return false;
    return true;
  };
  for (std::size_t t = 0; t < tests.size(); ++t) {
    const auto& a = tests[t];
    for (int j = 0; j <= cert.d; ++j)
      for (int g = 0; g < N; ++g) {
        for (int h = 0; h < N; ++h) {
          for (std::size_t s = 0; s < tests.size(); ++s) {
            if (!in_ideal(G.inv(g), tests[s])) continue;
            const Vector<Rational> lhs =
                (alpha(g, f[j][h].cwiseProduct(tests[s])) - f[j][G.mul(g, h)].cwiseProduct(alpha(g, tests[s])))
                    .cwiseProduct(a);
            if (!lhs.isZero()) return fail("raw(1)", {j, g, h, static_cast<int>(s), static_cast<int>(t)}, "");
          }
          if (g != h && !f[j][g].cwiseProduct(f[j][h]).cwiseProduct(a).isZero())
            return fail("raw(2)", {j, g, h, static_cast<int>(t)}, "");
        }
      }
    Vector<Rational> sum = Vector<Rational>::Zero(n);
    for (int j = 0; j <= cert.d; ++j)
      for (int g = 0; g < N; ++g) sum += f[j][g];
    if (sum.cwiseProduct(a) != a) return fail("raw(3)", {static_cast<int>(t)}, "");
  }
  return {};
}

}  // namespace pact
