// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <string>

#include "pact/decomp.hpp"
#include "pact/fdcstar.hpp"
#include "pact/gridtowers.hpp"
#include "pact/harness.hpp"
#include "pact/rokhlin.hpp"
#include "pact/tuples.hpp"

using namespace pact;

namespace {

constexpr std::uint64_t kCorpusSeed = 7;
constexpr int kCorpus = 100;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& what) {
  std::printf("%s %d %s\n", pass ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

void info(const std::string& what) {
  std::printf("INFO %s\n", what.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

PartialAction trivial_action(int n) {
  const FiniteGroup G = FiniteGroup::cyclic(2);
  PartialActionData d{G, n, {}, {{}, {}}, {{}, {}}};
  for (int x = 0; x < n; ++x) {
    d.domains[0].push_back(x);
    d.maps[0].emplace_back(x, x);
  }
  return PartialAction::validate(d);
}

PartialAction fixed_point_action() {
  PartialActionData d{FiniteGroup::cyclic(2), 1, {}, {{0}, {0}}, {{{0, 0}}, {{0, 0}}}};
  return PartialAction::validate(d);
}

void criterion_1() {
  const auto t0 = Clock::now();
  const PartialAction pa = trivial_action(3);
  const FDCStarAlgebra blocks = block_structure(crossed_product(pa).algebra);
  const RokhlinDimension rd = rokhlin_dimension(pa);
  bool unit = rd.certificate && rd.certificate->levels.size() == 1;
  if (unit)
    for (Eigen::Index x = 0; x < 3; ++x) unit = unit && rd.certificate->levels[0](x) == Rational(1);
  const bool verified = rd.certificate && verify_certificate(pa, *rd.certificate).ok;
  const double t = seconds_since(t0);
  report(1, blocks.blocks == std::vector<int>{1, 1, 1} && rd.value == 0 && unit && verified && t < 1.0,
         "trivial action on 3 points: blocks [1,1,1], dimension " + dimension_text(rd.value) +
             ", level f_1 = 1 exactly, " + fmt("%.3f s", t));
}

void criterion_2() {
  const auto t0 = Clock::now();
  const CheckReport r = check_free_iff_finite(kCorpusSeed, kCorpus);
  int free = 0;
  for (auto s : r.instance_seeds) free += is_free(corpus_instance(s)).free;
  const double t = seconds_since(t0);
  report(2, r.ok() && t < 300.0,
         "free iff finite on " + std::to_string(r.instances) + " instances (" + std::to_string(free) +
             " free): " + std::to_string(r.failures.size()) + " counterexamples, " + fmt("%.1f s", t));
}

void criterion_3() {
  const auto t0 = Clock::now();
  const CheckReport r = check_globalization_theorem(kCorpusSeed, kCorpus);
  report(3, r.ok(),
         "dimension and commuting dimension equal those of the globalization on " + std::to_string(r.instances) +
             " instances: " + std::to_string(r.failures.size()) + " counterexamples, " +
             fmt("%.1f s", seconds_since(t0)));
}

void criterion_4() {
  const auto t0 = Clock::now();
  const CheckReport r = check_strata_theorem(kCorpusSeed, 50);
  report(4, r.ok() && r.instances == 50,
         "dimension equals the max over global subsystems on " + std::to_string(r.instances) +
             " decomposable instances: " + std::to_string(r.failures.size()) + " counterexamples, " +
             fmt("%.1f s", seconds_since(t0)));
}

void criterion_5() {
  const auto t0 = Clock::now();
  const CheckReport r = check_block_oracle(kCorpusSeed, kCorpus);
  double worst = 0.0;
  for (auto s : r.instance_seeds) {
    const PartialAction pa = corpus_instance(s);
    worst = std::max(worst, block_structure(crossed_product(pa).algebra, s).integrality_residual);
  }
  report(5, r.ok() && worst < 1e-6,
         "numeric blocks equal orbit/stabilizer blocks, sum of squares equals sum of domains on " +
             std::to_string(r.instances) + " instances; worst integrality residual " + fmt("%.2e", worst) + ", " +
             fmt("%.1f s", seconds_since(t0)));
}

void criterion_6() {
  const auto t0 = Clock::now();
  int free = 0, passing = 0;
  for (int i = 0; i < kCorpus; ++i) {
    const PartialAction pa = corpus_instance(instance_seed(kCorpusSeed, i));
    if (!is_free(pa).free) continue;
    ++free;
    passing += imprimitivity_bimodule_verify(pa).all();
  }
  const BimoduleReport ri2 = imprimitivity_bimodule_verify(fixed_point_action());
  const bool ri2_ok = ri2.central_unit && ri2.positivity && ri2.compatibility && ri2.left_full && !ri2.right_full &&
                      ri2.span_dimension == 1 && ri2.algebra_dimension == 2;
  report(6, free > 0 && passing == free && ri2_ok,
         std::to_string(passing) + "/" + std::to_string(free) +
             " free instances pass all bimodule clauses; fixed point of cyclic(2): right fullness span " +
             std::to_string(ri2.span_dimension) + " vs " + std::to_string(ri2.algebra_dimension) + ", " +
             fmt("%.1f s", seconds_since(t0)));
}

void criterion_7() {
  const auto t0 = Clock::now();
  const GridExample ex = example_4_5(0.125, 64);
  const double res = residual(ex.action, ex.towers, ex.F);
  const double bound = example_4_5_bound(ex);
  const bool admissible = check_admissible(ex.action, ex.towers).ok;
  const double t = seconds_since(t0);
  report(7, ex.towers.d == 1 && res <= bound && admissible && t < 1.0,
         "example_4_5, delta 1/8, m 64: d = 1 towers, residual " + fmt("%.6f", res) + " <= bound " +
             fmt("%.6f", bound) + ", admissible, " + fmt("%.3f s", t));

  const GridExample lit = example_4_5(0.125, 64, TowerVariant::Literal);
  const Admissibility la = check_admissible(lit.action, lit.towers);
  info("example_4_5 literal towers: residual " + fmt("%.4f", residual(lit.action, lit.towers, lit.F)) +
       ", admissible " + (la.ok ? "yes" : "no") + fmt(" (largest jump excess %.3f)", la.worst_excess));
  const TowerSearchOutcome s = search_towers(ex.action, ex.F, ex.epsilon, 1, 8.0, 45, 200);
  info("example_4_5, search at d = 1, 200 restarts, L = 8: best residual " + fmt("%.4f", s.best_residual) +
       " (the 1e-3 target is out of reach under the Lipschitz cap, see README)");
}

void criterion_8() {
  const auto t0 = Clock::now();
  const GridExample ex = example_3_2(128);
  double floor_levels = 0, floor_free = 0;
  {
    SearchTuning tuning;
    tuning.parametrization = Parametrization::Levels;
    floor_levels = search_towers(ex.action, ex.F, ex.epsilon, 0, 8.0, 32, 500, tuning).best_residual;
    tuning.parametrization = Parametrization::Free;
    floor_free = search_towers(ex.action, ex.F, ex.epsilon, 0, 8.0, 32, 500, tuning).best_residual;
  }
  const TowerSearchOutcome one = search_towers(ex.action, ex.F, ex.epsilon, 1, 8.0, 32, 20);
  const double t = seconds_since(t0);
  report(8, floor_levels >= 1.0 / 16 && floor_free >= 1.0 / 16 && one.best_residual <= 1e-3 && t < 600.0,
         "example_3_2, eps 3/16, m 128, L 8: best d = 0 residual over 500 restarts " + fmt("%.4f", floor_levels) +
             " (levels), " + fmt("%.4f", floor_free) + " (free), both >= 1/16; d = 1 residual " +
             fmt("%.1e", one.best_residual) + ", " + fmt("%.1f s", t) +
             "; evidence that dim > 0, not a proof");
}

// Property suites on the corpus.

bool partial_action_identities(const PartialAction& pa) {
  const FiniteGroup& G = pa.group();
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < G.order(); ++h)
      for (int x = 0; x < pa.size(); ++x) {
        // composition axiom
        if (pa.defined(h, x) && pa.defined(g, pa.apply(h, x)) &&
            pa.apply(G.mul(g, h), x) != pa.apply(g, pa.apply(h, x)))
          return false;
        // theta_g(X_{g^-1} cap X_h) = X_g cap X_{gh}
        if (pa.defined(g, x) && pa.in_domain(h, x) != pa.in_domain(G.mul(g, h), pa.apply(g, x))) return false;
      }
  int arrows = 0;
  for (int g = 0; g < G.order(); ++g) arrows += static_cast<int>(pa.domain(g).size());
  return static_cast<int>(translation_groupoid(pa).arrows.size()) == arrows;
}

bool tuple_equivariance(const PartialAction& pa) {
  const FiniteGroup& G = pa.group();
  for (int g = 0; g < G.order(); ++g)
    for (int x = 0; x < pa.size(); ++x)
      if (pa.defined(g, x) && domain_tuple(pa, pa.apply(g, x)) != translate(G, g, domain_tuple(pa, x))) return false;
  return true;
}

bool stratification_invariance(const PartialAction& pa) {
  const Stratification st = stratification(pa);
  std::vector<int> seen(pa.size(), 0);
  for (std::size_t k = 0; k < st.strata.size(); ++k) {
    for (int x : st.strata[k]) ++seen[x];
    if (st.strata[k].empty()) continue;
    try {
      if (!is_n_decomposable(restrict_to(pa, st.strata[k]).action, static_cast<int>(k) + 1)) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }) && reassemble(pa, st) == pa;
}

bool certificate_monotonicity(const PartialAction& pa) {
  const int top = std::min(pa.group().order() - 1, 2);
  bool seen = false;
  for (int d = 0; d <= top; ++d) {
    const TowerSearchResult r = towers_exist(pa, d);
    const auto* cert = std::get_if<TowerCertificate>(&r);
    if (seen && !cert) return false;
    if (cert) {
      seen = true;
      if (!verify_certificate(pa, *cert).ok || !verify_certificate(pa, cert->padded()).ok) return false;
    }
  }
  return true;
}

bool orthogonal_lift_postconditions(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int size = 2 + static_cast<int>(rng() % 6), n = 1 + static_cast<int>(rng() % 4);
  std::vector<int> J;
  for (int p = 0; p < size; ++p)
    if (rng() % 3 == 0) J.push_back(p);
  const auto in_j = [&](int p) { return std::find(J.begin(), J.end(), p) != J.end(); };
  std::vector<std::vector<int>> ideals(n);
  std::vector<Vector<Rational>> x(n, Vector<Rational>::Zero(size));
  for (int p = 0; p < size; ++p) {
    const int owner = static_cast<int>(rng() % (n + 1));  // off J at most one function is nonzero
    for (int j = 0; j < n; ++j) {
      if (rng() % 4 != 0) ideals[j].push_back(p);
      const bool in_a = std::find(ideals[j].begin(), ideals[j].end(), p) != ideals[j].end();
      if (in_a && (in_j(p) || j == owner)) x[j](p) = Rational(static_cast<int>(rng() % 5), 4);
    }
  }
  const auto y = orthogonal_lifts(size, J, ideals, x);
  for (int j = 0; j < n; ++j)
    for (int p = 0; p < size; ++p) {
      if (y[j](p) < 0 || y[j](p) > x[j](p)) return false;
      if (!in_j(p) && y[j](p) != x[j](p)) return false;
      for (int k = 0; k < j; ++k)
        if (y[j](p) * y[k](p) != 0) return false;
    }
  return true;
}

void criterion_9() {
  const auto t0 = Clock::now();
  int bad_pa = 0, bad_tuple = 0, bad_strata = 0, bad_mono = 0, bad_lift = 0;
  for (int i = 0; i < kCorpus; ++i) {
    const std::uint64_t s = instance_seed(kCorpusSeed, i);
    const PartialAction pa = corpus_instance(s);
    bad_pa += !partial_action_identities(pa);
    bad_tuple += !tuple_equivariance(pa);
    bad_strata += !stratification_invariance(pa);
    bad_mono += !certificate_monotonicity(pa);
    bad_lift += !orthogonal_lift_postconditions(s);
  }
  for (const auto& G : {FiniteGroup::cyclic(4), FiniteGroup::klein4(), FiniteGroup::cyclic(6), FiniteGroup::symmetric(3)})
    for (int n = 1; n <= G.order(); ++n) {
      const TupleSpace ts = tuple_space(G, n);
      for (std::size_t z = 0; z < ts.orbits.size(); ++z) bad_tuple += ts.kappa[ts.section[z]] != static_cast<int>(z);
      bad_tuple += !partial_action_identities(ts.lt);
    }
  const double t = seconds_since(t0);
  report(9, bad_pa + bad_tuple + bad_strata + bad_mono + bad_lift == 0 && t < 300.0,
         "property suites on " + std::to_string(kCorpus) + " instances: violations " + std::to_string(bad_pa) +
             " partial-action, " + std::to_string(bad_tuple) + " tuple, " + std::to_string(bad_strata) +
             " stratification, " + std::to_string(bad_mono) + " monotonicity, " + std::to_string(bad_lift) +
             " lift; " + fmt("%.1f s", t));
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  info("total " + fmt("%.1f s", seconds_since(t0)));
  return failures == 0 ? 0 : 1;
}
