#include "pact/gridtowers.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

#include "pact/error.hpp"

namespace pact {

double ResidualBreakdown::total() const { return std::max({equivariance, orthogonality, partition}); }

NumericTowers NumericTowers::zero(const GridAction& ga, int d) {
  NumericTowers t;
  t.d = d;
  t.values.assign(d + 1, std::vector<GridFunction>(ga.action.group().order(), GridFunction::Zero(ga.size())));
  return t;
}

namespace {

void check_shapes(const GridAction& ga, const NumericTowers& t, const std::vector<GridFunction>& F) {
  const int n = ga.size();
  if (static_cast<int>(t.values.size()) != t.d + 1)
    throw Error(ErrorCode::ShapeMismatch, "level count does not match d");
  for (const auto& level : t.values) {
    if (static_cast<int>(level.size()) != ga.action.group().order())
      throw Error(ErrorCode::ShapeMismatch, "one tower per group element is required");
    for (const auto& f : level)
      if (f.size() != n) throw Error(ErrorCode::ShapeMismatch, "tower size differs from the grid");
  }
  for (const auto& a : F)
    if (a.size() != n) throw Error(ErrorCode::ShapeMismatch, "test function size differs from the grid");
}

constexpr double kZero = 1e-12;

bool supported_in(const PartialAction& pa, int g, const GridFunction& x) {
  for (int p = 0; p < pa.size(); ++p)
    if (std::abs(x(p)) > kZero && !pa.in_domain(g, p)) return false;
  return true;
}

GridFunction weight(const std::vector<GridFunction>& F, int n) {
  GridFunction w = GridFunction::Zero(n);
  for (const auto& a : F) w = w.cwiseMax(a.cwiseAbs());
  return w;
}

}  // namespace

ResidualBreakdown residual_breakdown(const GridAction& ga, const NumericTowers& t,
                                     const std::vector<GridFunction>& F) {
  check_shapes(ga, t, F);
  const PartialAction& pa = ga.action;
  const FiniteGroup& G = pa.group();
  const int n = ga.size(), N = G.order();
  const GridFunction wa = weight(F, n);
  ResidualBreakdown r;
  auto note = [&](double& slot, double v, int p) {
    if (v > slot) {
      slot = v;
      if (v >= r.total()) r.worst_point = p;
    }
  };
  for (int j = 0; j <= t.d; ++j) {
    const auto& f = t.values[j];
    for (int g = 0; g < N; ++g) {
      const int gi = G.inv(g);
      std::vector<const GridFunction*> witnesses;
      for (const auto& x : F)
        if (supported_in(pa, gi, x)) witnesses.push_back(&x);
      for (int h = 0; h < N; ++h) {
        const int gh = G.mul(g, h);
        for (int p : pa.domain(g)) {
          const int y = pa.apply(gi, p);
          const double diff = std::abs(f[h](y) - f[gh](p));
          if (diff == 0.0) continue;
          for (const GridFunction* x : witnesses) note(r.equivariance, diff * std::abs((*x)(y)) * wa(p), p);
        }
        if (h != g)
          for (int p = 0; p < n; ++p) note(r.orthogonality, std::abs(f[g](p) * f[h](p)) * wa(p), p);
      }
    }
  }
  for (int p = 0; p < n; ++p) {
    double s = 0.0;
    for (int j = 0; j <= t.d; ++j)
      for (int g = 0; g < N; ++g) s += t.values[j][g](p);
    note(r.partition, std::abs(s - 1.0) * wa(p), p);
  }
  return r;
}

double residual(const GridAction& ga, const NumericTowers& t, const std::vector<GridFunction>& F) {
  return residual_breakdown(ga, t, F).total();
}

Admissibility check_admissible(const GridAction& ga, const NumericTowers& t, double tolerance) {
  check_shapes(ga, t, {});
  Admissibility out;
  const double step = ga.lipschitz * ga.spacing;
  auto note = [&](double excess, int j, int g, int p) {
    if (excess > out.worst_excess) {
      out.worst_excess = excess;
      out.witness = {j, g, p};
    }
  };
  for (int j = 0; j <= t.d; ++j)
    for (int g = 0; g < ga.action.group().order(); ++g) {
      const auto& f = t.values[j][g];
      for (int p = 0; p < ga.size(); ++p) {
        if (!ga.action.in_domain(g, p)) note(std::abs(f(p)), j, g, p);
        note(-f(p), j, g, p);
        note(f(p) - 1.0, j, g, p);
      }
      for (auto [p, q] : ga.edges) note(std::abs(f(p) - f(q)) - step, j, g, p);
    }
  out.ok = out.worst_excess <= tolerance;
  return out;
}

namespace {

FiniteGroup z2() { return FiniteGroup::cyclic(2); }

PartialAction z2_action(int n, const std::vector<int>& sigma) {
  PartialActionData d{z2(), n, {}, {{}, {}}, {{}, {}}};
  for (int p = 0; p < n; ++p) {
    d.domains[0].push_back(p);
    d.maps[0].emplace_back(p, p);
    if (sigma[p] >= 0) {
      d.domains[1].push_back(p);
      d.maps[1].emplace_back(p, sigma[p]);
    }
  }
  return PartialAction::validate(d);
}

// distance from t to the nearest of the given marks
double distance_to(double t, std::initializer_list<double> marks) {
  double best = std::numeric_limits<double>::infinity();
  for (double m : marks) best = std::min(best, std::abs(t - m));
  return best;
}

}  // namespace

GridExample example_4_5(double delta, int m, TowerVariant variant) {
  if (!(delta > 0.0 && delta < 0.25)) throw Error(ErrorCode::BadDelta, "delta must lie in (0, 1/4)");
  if (m <= 0 || m % 2 != 0) throw Error(ErrorCode::OddGrid, "the half shift needs an even grid");
  const int half = m / 2;
  // point k-1 sits at x = 2k/m
  std::vector<int> sigma(m, -1);
  for (int k = 1; k < m; ++k) {
    if (k == half) continue;
    sigma[k - 1] = (k < half ? k + half : k - half) - 1;
  }
  GridExample ex{{z2_action(m, sigma), {}, std::vector<int>(m, 0), {}, 2.0 / m, 8.0}, {}, {}, 0.0, delta};
  GridFunction a(m), b(m), f(m), e(m);
  for (int k = 1; k <= m; ++k) {
    const double x = 2.0 * k / m;
    ex.action.coords.push_back(x);
    if (k > 1) ex.action.edges.emplace_back(k - 2, k - 1);
    a(k - 1) = x / 2.0;
    b(k - 1) = (2 * k) % m == 0 ? 0.0 : std::abs(std::sin(std::numbers::pi * x));
    f(k - 1) = std::min(1.0, x / delta);
    e(k - 1) = (k == half || k == m) ? 0.0 : std::min(1.0, distance_to(x, {0.0, 1.0, 2.0}) / delta);
  }
  ex.F = {a, b};
  NumericTowers& t = ex.towers;
  t = NumericTowers::zero(ex.action, 1);
  for (int k = 1; k <= m; ++k) {
    const int p = k - 1;
    const bool left = k < half, right = k > half;
    if (variant == TowerVariant::Literal) {
      if (left) {
        t.values[0][1](p) = e(p);
        t.values[1][1](p) = f(p) - e(p);
      }
      if (right) {
        t.values[0][0](p) = e(p);
        t.values[1][0](p) = f(p) - e(p);
      }
    } else {
      if (left) t.values[0][1](p) = e(p);
      if (right && k < m) t.values[0][0](p) = e(p);
      t.values[1][0](p) = f(p) - e(p);
    }
  }
  ex.epsilon = example_4_5_bound(ex);
  return ex;
}

double example_4_5_bound(const GridExample& ex) {
  const int m = ex.action.size();
  double norm_a = 0.0;
  for (const auto& a : ex.F) norm_a = std::max(norm_a, a.cwiseAbs().maxCoeff());
  double bound = 0.0;
  for (const auto& a : ex.F) {
    const bool in_u = supported_in(ex.action.action, 1, a);
    for (int p = 0; p < m; ++p) {
      const double x = ex.action.coords[p];
      const double f = std::min(1.0, x / ex.delta);
      bound = std::max(bound, std::abs((f - 1.0) * a(p)));
      if (in_u) {
        const double e = std::min(1.0, distance_to(x, {0.0, 1.0, 2.0}) / ex.delta);
        bound = std::max(bound, std::abs((e - 1.0) * a(p)) * norm_a);
      }
    }
  }
  return bound;
}

namespace {

GridExample two_copies(int m, bool global) {
  if (m < 16) throw Error(ErrorCode::GridTooCoarse, "need at least 16 grid intervals");
  if (m % 2 != 0) throw Error(ErrorCode::OddGrid, "the half shift needs an even grid");
  const int half = m / 2;
  const int first = global ? 0 : 1;
  const int per = m - first;  // points per copy
  auto index = [&](int k, int c) { return c * per + (k - first); };
  std::vector<int> sigma(2 * per, -1);
  const double epsilon = 3.0 / 16.0;
  std::vector<double> coords;
  std::vector<int> component;
  std::vector<std::pair<int, int>> edges;
  GridFunction a(2 * per), b(2 * per);
  for (int c = 0; c < 2; ++c) {
    for (int k = first; k < m; ++k) {
      const int p = index(k, c);
      const double t = 2.0 * k / m;
      coords.push_back(t);
      component.push_back(c);
      if (k > first) edges.emplace_back(index(k - 1, c), p);
      if (global || k != half) sigma[p] = index(k < half ? k + half : k - half, 1 - c);
      a(p) = std::min(1.0, distance_to(t, {0.0, 2.0}) / epsilon);
      b(p) = std::min(1.0, distance_to(t, {0.0, 1.0, 2.0}) / epsilon);
    }
    if (global) edges.emplace_back(index(m - 1, c), index(0, c));
  }
  GridExample ex{GridAction{z2_action(2 * per, sigma), coords, component, edges, 2.0 / m, 8.0}, {}, {a, b},
                 epsilon, 0.0};
  if (global) {
    ex.towers = NumericTowers::zero(ex.action, 0);
    for (int k = first; k < m; ++k) {
      ex.towers.values[0][0](index(k, 1)) = 1.0;  // f_1 = (0,1)
      ex.towers.values[0][1](index(k, 0)) = 1.0;  // f_{-1} = (1,0)
    }
  }
  return ex;
}

}  // namespace

GridExample example_3_2(int m) { return two_copies(m, false); }
GridExample example_3_2_global(int m) { return two_copies(m, true); }

NumericTowers example_3_2_level_one_towers(const GridExample& ex) {
  const GridAction& ga = ex.action;
  const int n = ga.size();
  auto rho = [](double t) { return std::clamp(std::min(8.0 * t, 8.0 * (2.0 - t)), 0.0, 1.0); };
  std::vector<GridFunction> phi(2, GridFunction::Zero(n));
  for (int p = 0; p < n; ++p) {
    const double t = ga.coords[p];
    if (ga.component[p] == 1) {
      phi[0](p) = rho(t);
    } else {
      const int q = ga.action.apply(1, p);
      phi[1](p) = q < 0 ? 1.0 : 1.0 - rho(ga.coords[q]);
    }
  }
  NumericTowers t = NumericTowers::zero(ga, 1);
  for (int j = 0; j < 2; ++j) {
    t.values[j][0] = phi[j];
    for (int p : ga.action.domain(1)) t.values[j][1](p) = phi[j](ga.action.apply(1, p));
  }
  return t;
}

GridAction from_partial_action(const PartialAction& pa, double lipschitz) {
  GridAction ga{pa, {}, std::vector<int>(pa.size()), {}, 1.0, lipschitz};
  for (int p = 0; p < pa.size(); ++p) {
    ga.coords.push_back(p);
    ga.component[p] = p;
  }
  return ga;
}

NumericTowers embed_certificate(const PartialAction& pa, const TowerCertificate& cert) {
  NumericTowers t;
  t.d = cert.d;
  for (int j = 0; j <= cert.d; ++j) {
    t.values.emplace_back();
    for (int g = 0; g < pa.group().order(); ++g) {
      const auto f = cert.tower(pa, g, j);
      GridFunction v(pa.size());
      for (int p = 0; p < pa.size(); ++p) v(p) = to_double(f(p));
      t.values.back().push_back(v);
    }
  }
  return t;
}

namespace {

struct Pair {
  int h, y;    // f_h(y)
  int gh, p;   // f_gh(p), p = theta_g(y)
  double w;    // weight of a violation
};

struct Problem {
  const GridAction& ga;
  const std::vector<GridFunction>& F;
  int d;
  double step;
  GridFunction wa;
  std::vector<Pair> pairs;
  std::vector<std::vector<char>> domain;  // [g][p]
};

Problem make_problem(const GridAction& ga, const std::vector<GridFunction>& F, int d, double lipschitz) {
  const PartialAction& pa = ga.action;
  const FiniteGroup& G = pa.group();
  Problem pr{ga, F, d, lipschitz * ga.spacing, weight(F, ga.size()), {}, {}};
  pr.domain.assign(G.order(), std::vector<char>(ga.size(), 0));
  for (int g = 0; g < G.order(); ++g)
    for (int p : pa.domain(g)) pr.domain[g][p] = 1;
  for (int g = 1; g < G.order(); ++g) {
    const int gi = G.inv(g);
    GridFunction wx = GridFunction::Zero(ga.size());
    for (const auto& x : F)
      if (supported_in(pa, gi, x)) wx = wx.cwiseMax(x.cwiseAbs());
    for (int h = 0; h < G.order(); ++h)
      for (int y : pa.domain(gi)) {
        if (!pa.in_domain(h, y)) continue;
        const int p = pa.apply(g, y);
        const double w = wx(y) * pr.wa(p);
        if (w > 0.0) pr.pairs.push_back({h, y, G.mul(g, h), p, w});
      }
  }
  return pr;
}

using Towers = std::vector<std::vector<GridFunction>>;

void clamp_support(const Problem& pr, Towers& f) {
  for (auto& level : f)
    for (std::size_t g = 0; g < level.size(); ++g)
      for (int p = 0; p < pr.ga.size(); ++p)
        level[g](p) = pr.domain[g][p] ? std::clamp(level[g](p), 0.0, 1.0) : 0.0;
}

void sweep(const Problem& pr, Towers& f, double band) {
  const int n = pr.ga.size();
  const int N = static_cast<int>(f[0].size());
  for (auto& level : f)
    for (const Pair& q : pr.pairs) {
      double& u = level[q.h](q.y);
      double& v = level[q.gh](q.p);
      const double tol = band / q.w;
      const double diff = v - u;
      if (std::abs(diff) <= tol) continue;
      const double move = (std::abs(diff) - tol) / 2.0 * (diff > 0 ? 1.0 : -1.0);
      u += move;
      v -= move;
    }
  for (int p = 0; p < n; ++p) {
    if (pr.wa(p) <= 0.0) continue;
    const double cap = band / pr.wa(p);
    std::vector<int> winner(pr.d + 1, -1);
    for (int j = 0; j <= pr.d; ++j) {
      auto& level = f[j];
      int best = -1;
      for (int g = 0; g < N; ++g)
        if (pr.domain[g][p] && (best < 0 || level[g](p) > level[best](p))) best = g;
      winner[j] = best;
      if (best < 0) continue;
      const double top = level[best](p);
      for (int g = 0; g < N; ++g)
        if (g != best && top > 0.0) level[g](p) = std::min(level[g](p), cap / top);
    }
    double s = 0.0;
    for (int j = 0; j <= pr.d; ++j)
      for (int g = 0; g < N; ++g) s += f[j][g](p);
    if (s < 1.0 - cap) {
      const double add = (1.0 - cap - s) / (pr.d + 1);
      for (int j = 0; j <= pr.d; ++j)
        if (winner[j] >= 0) f[j][winner[j]](p) += add;
    } else if (s > 1.0 + cap) {
      const double scale = (1.0 + cap) / s;
      for (int j = 0; j <= pr.d; ++j)
        for (int g = 0; g < N; ++g) f[j][g](p) *= scale;
    }
  }
  for (auto& level : f)
    for (int g = 0; g < N; ++g) {
      auto& v = level[g];
      for (auto [p, q] : pr.ga.edges) {
        const double diff = v(p) - v(q);
        if (std::abs(diff) <= pr.step) continue;
        const bool fp = pr.domain[g][p], fq = pr.domain[g][q];
        const double excess = std::abs(diff) - pr.step;
        const double sign = diff > 0 ? 1.0 : -1.0;
        if (fp && fq) {
          v(p) -= sign * excess / 2.0;
          v(q) += sign * excess / 2.0;
        } else if (fp) {
          v(p) -= sign * excess;
        } else if (fq) {
          v(q) += sign * excess;
        }
      }
    }
  clamp_support(pr, f);
}

// Largest admissible function below each tower.
void make_admissible(const Problem& pr, Towers& f) {
  clamp_support(pr, f);
  for (auto& level : f)
    for (auto& v : level) {
      for (int pass = 0; pass < pr.ga.size() + 2; ++pass) {
        bool changed = false;
        for (int dir = 0; dir < 2; ++dir)
          for (std::size_t e = 0; e < pr.ga.edges.size(); ++e) {
            auto [p, q] = pr.ga.edges[dir == 0 ? e : pr.ga.edges.size() - 1 - e];
            if (v(p) > v(q) + pr.step) {
              v(p) = v(q) + pr.step;
              changed = true;
            }
            if (v(q) > v(p) + pr.step) {
              v(q) = v(p) + pr.step;
              changed = true;
            }
          }
        if (!changed) break;
      }
      for (Eigen::Index p = 0; p < v.size(); ++p) {
        if (std::abs(v(p)) < 1e-12) v(p) = 0.0;
        if (std::abs(v(p) - 1.0) < 1e-12) v(p) = 1.0;
      }
    }
}

std::uint64_t derive_seed(std::uint64_t seed, int restart) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(restart + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct RestartResult {
  Towers best;
  RestartTrace trace;
};

RestartResult run_restart(const Problem& pr, double epsilon, const SearchTuning& tuning, int restart,
                          std::uint64_t seed) {
  const int N = pr.ga.action.group().order();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Towers f(pr.d + 1, std::vector<GridFunction>(N, GridFunction::Zero(pr.ga.size())));
  for (auto& level : f)
    for (auto& v : level)
      for (Eigen::Index p = 0; p < v.size(); ++p) v(p) = unit(rng);
  clamp_support(pr, f);

  RestartResult out;
  out.trace.restart = restart;
  out.trace.seed = seed;
  out.trace.best_residual = std::numeric_limits<double>::infinity();
  NumericTowers scored{pr.d, {}};
  auto score = [&] {
    scored.values = f;
    make_admissible(pr, scored.values);
    const double r = residual(pr.ga, scored, pr.F);
    if (r < out.trace.best_residual) {
      out.trace.best_residual = r;
      out.best = scored.values;
    }
    return r;
  };
  double band = epsilon;
  for (int stage = 0; stage <= tuning.stages; ++stage) {
    if (stage == tuning.stages) band = 0.0;
    for (int s = 0; s < tuning.sweeps_per_stage; ++s) sweep(pr, f, band);
    score();
    band *= tuning.band_decay;
  }
  out.trace.final_residual = score();
  return out;
}

// Unknowns phi_j = f_1^(j); every tower is a pullback of a level.
struct LevelProblem {
  const Problem& base;
  int n = 0;
  std::vector<std::vector<int>> entries;     // x -> sources theta_{g^-1}(x), g with x in X_g
  std::vector<std::vector<char>> repeated;   // x -> source occurs more than once
  std::vector<std::pair<int, int>> pairs;    // |phi(a) - phi(b)| <= step
  std::vector<int> caps;                     // phi(y) <= step

  explicit LevelProblem(const Problem& pr) : base(pr), n(pr.ga.size()) {
    const PartialAction& pa = pr.ga.action;
    const FiniteGroup& G = pa.group();
    entries.resize(n);
    repeated.resize(n);
    for (int x = 0; x < n; ++x) {
      for (int g = 0; g < G.order(); ++g)
        if (pa.in_domain(g, x)) entries[x].push_back(pa.apply(G.inv(g), x));
      for (int a : entries[x])
        repeated[x].push_back(std::count(entries[x].begin(), entries[x].end(), a) > 1);
    }
    std::vector<char> capped(n, 0);
    for (int g = 0; g < G.order(); ++g) {
      const int gi = G.inv(g);
      for (auto [p, q] : pr.ga.edges) {
        const bool ip = pa.in_domain(g, p), iq = pa.in_domain(g, q);
        if (ip && iq) {
          int a = pa.apply(gi, p), b = pa.apply(gi, q);
          if (a > b) std::swap(a, b);
          if (a != b) pairs.emplace_back(a, b);
        } else if (ip) {
          capped[pa.apply(gi, p)] = 1;
        } else if (iq) {
          capped[pa.apply(gi, q)] = 1;
        }
      }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    for (int y = 0; y < n; ++y)
      if (capped[y]) caps.push_back(y);
  }

  Towers derive(const std::vector<GridFunction>& phi) const {
    const PartialAction& pa = base.ga.action;
    const int N = pa.group().order();
    Towers f(phi.size(), std::vector<GridFunction>(N, GridFunction::Zero(n)));
    for (std::size_t j = 0; j < phi.size(); ++j)
      for (int g = 0; g < N; ++g)
        for (int x : pa.domain(g)) f[j][g](x) = phi[j](pa.apply(pa.group().inv(g), x));
    return f;
  }

  void lipschitz(GridFunction& v) const {
    const double step = base.step;
    for (auto [a, b] : pairs) {
      const double diff = v(a) - v(b);
      if (std::abs(diff) <= step) continue;
      const double move = (std::abs(diff) - step) / 2.0 * (diff > 0 ? 1.0 : -1.0);
      v(a) -= move;
      v(b) += move;
    }
    for (int y : caps) v(y) = std::min(v(y), step);
  }

  // largest admissible level below v
  void envelope(GridFunction& v) const {
    for (Eigen::Index y = 0; y < v.size(); ++y) v(y) = std::clamp(v(y), 0.0, 1.0);
    for (int y : caps) v(y) = std::min(v(y), base.step);
    for (int pass = 0; pass < n + 2; ++pass) {
      bool changed = false;
      for (int dir = 0; dir < 2; ++dir)
        for (std::size_t e = 0; e < pairs.size(); ++e) {
          auto [a, b] = pairs[dir == 0 ? e : pairs.size() - 1 - e];
          if (v(a) > v(b) + base.step) {
            v(a) = v(b) + base.step;
            changed = true;
          }
          if (v(b) > v(a) + base.step) {
            v(b) = v(a) + base.step;
            changed = true;
          }
        }
      if (!changed) break;
    }
    for (Eigen::Index y = 0; y < v.size(); ++y) {
      if (std::abs(v(y)) < 1e-12) v(y) = 0.0;
      if (std::abs(v(y) - 1.0) < 1e-12) v(y) = 1.0;
    }
  }

  // index into entries[x] of the largest unrepeated entry of level v, or -1
  int winner(const GridFunction& v, int x) const {
    int best = -1;
    for (std::size_t k = 0; k < entries[x].size(); ++k)
      if (!repeated[x][k] && (best < 0 || v(entries[x][k]) > v(entries[x][best]))) best = static_cast<int>(k);
    return best;
  }
};

RestartResult run_level_restart(const Problem& pr, const SearchTuning& tuning, int restart, std::uint64_t seed) {
  const LevelProblem lp(pr);
  const int n = lp.n, levels = pr.d + 1;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<GridFunction> phi(levels, GridFunction::Zero(n));
  // smooth random start: a level per component plus a slow wave
  int components = 0;
  for (int c : pr.ga.component) components = std::max(components, c + 1);
  for (auto& v : phi) {
    std::vector<double> base(components), amplitude(components), frequency(components), phase(components);
    for (int c = 0; c < components; ++c) {
      base[c] = unit(rng);
      amplitude[c] = 0.3 * unit(rng);
      frequency[c] = 2.0 * unit(rng);
      phase[c] = 2.0 * std::numbers::pi * unit(rng);
    }
    for (int y = 0; y < n; ++y) {
      const int c = pr.ga.component[y];
      v(y) = base[c] + amplitude[c] * std::sin(std::numbers::pi * frequency[c] * pr.ga.coords[y] + phase[c]);
    }
    lp.envelope(v);
  }

  RestartResult out;
  out.trace.restart = restart;
  out.trace.seed = seed;
  out.trace.best_residual = std::numeric_limits<double>::infinity();
  auto score = [&] {
    std::vector<GridFunction> admissible = phi;
    for (auto& v : admissible) lp.envelope(v);
    NumericTowers t{pr.d, lp.derive(admissible)};
    const double r = residual(pr.ga, t, pr.F);
    if (r < out.trace.best_residual) {
      out.trace.best_residual = r;
      out.best = std::move(t.values);
    }
    return r;
  };
  auto partition = [&](const std::vector<std::vector<char>>* support) {
    for (int x = 0; x < n; ++x) {
      if (pr.wa(x) <= 0.0) continue;
      double s = 0.0;
      std::vector<std::pair<int, int>> active;  // (level, source)
      for (int j = 0; j < levels; ++j) {
        for (int y : lp.entries[x]) s += phi[j](y);
        if (support) {
          for (int y : lp.entries[x])
            if ((*support)[j][y]) active.emplace_back(j, y);
        } else if (int w = lp.winner(phi[j], x); w >= 0) {
          active.emplace_back(j, lp.entries[x][w]);
        }
      }
      if (active.empty()) continue;
      const double add = (1.0 - s) / static_cast<double>(active.size());
      for (auto [j, y] : active) phi[j](y) += add;
    }
  };
  auto finish_sweep = [&] {
    for (auto& v : phi) {
      lp.lipschitz(v);
      for (int y = 0; y < n; ++y) v(y) = std::clamp(v(y), 0.0, 1.0);
    }
  };

  for (int stage = 0; stage < tuning.stages; ++stage) {
    const double keep = 1.0 - static_cast<double>(stage + 1) / tuning.stages;
    for (int s = 0; s < tuning.sweeps_per_stage; ++s) {
      for (int x = 0; x < n; ++x)
        for (int j = 0; j < levels; ++j) {
          const int w = lp.winner(phi[j], x);
          for (std::size_t k = 0; k < lp.entries[x].size(); ++k)
            if (static_cast<int>(k) != w && (w < 0 || lp.entries[x][k] != lp.entries[x][w]))
              phi[j](lp.entries[x][k]) *= keep;
        }
      partition(nullptr);
      finish_sweep();
    }
    score();
  }

  // freeze an admissible support: at every point at most one source per level
  std::vector<std::vector<char>> support(levels, std::vector<char>(n, 0));
  for (int j = 0; j < levels; ++j) {
    for (int y = 0; y < n; ++y) support[j][y] = phi[j](y) > 0.0;
    for (int x = 0; x < n; ++x) {
      const int w = lp.winner(phi[j], x);
      for (std::size_t k = 0; k < lp.entries[x].size(); ++k)
        if (static_cast<int>(k) != w) support[j][lp.entries[x][k]] = 0;
    }
  }
  for (int s = 1; s <= tuning.polish_sweeps; ++s) {
    partition(&support);
    finish_sweep();
    for (int j = 0; j < levels; ++j)
      for (int y = 0; y < n; ++y)
        if (!support[j][y]) phi[j](y) = 0.0;
    if (s % 50 == 0 || s == tuning.polish_sweeps) score();
  }
  out.trace.final_residual = score();
  return out;
}

}  // namespace

TowerSearchOutcome search_towers(const GridAction& ga_in, const std::vector<GridFunction>& F, double epsilon,
                                 int d, double lipschitz, std::uint64_t seed, int restarts,
                                 const SearchTuning& tuning) {
  GridAction ga = ga_in;
  ga.lipschitz = lipschitz;
  check_shapes(ga, NumericTowers::zero(ga, d), F);
  const Problem pr = make_problem(ga, F, d, lipschitz);
  std::vector<RestartResult> results(restarts);
  const int threads = std::max(1, tuning.threads);
  for (int start = 0; start < restarts; start += threads) {
    std::vector<std::future<RestartResult>> jobs;
    for (int r = start; r < std::min(restarts, start + threads); ++r)
      jobs.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred, [&, r] {
        return tuning.parametrization == Parametrization::Levels
                   ? run_level_restart(pr, tuning, r, derive_seed(seed, r))
                   : run_restart(pr, epsilon, tuning, r, derive_seed(seed, r));
      }));
    for (int r = start; r < std::min(restarts, start + threads); ++r) results[r] = jobs[r - start].get();
  }
  TowerSearchOutcome out;
  out.towers = NumericTowers::zero(ga, d);
  out.best_residual = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    out.traces.push_back(results[r].trace);
    if (results[r].trace.best_residual < out.best_residual) {
      out.best_residual = results[r].trace.best_residual;
      out.best_restart = r;
      out.towers.values = results[r].best;
    }
  }
  return out;
}

void write_traces(std::ostream& os, const TowerSearchOutcome& outcome) {
  os << "restart seed best final\n";
  for (const auto& t : outcome.traces)
    os << t.restart << ' ' << t.seed << ' ' << t.best_residual << ' ' << t.final_residual << '\n';
}

}  // namespace pact
