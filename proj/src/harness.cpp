#include "pact/harness.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <random>

#include "pact/decomp.hpp"
#include "pact/fdcstar.hpp"
#include "pact/io.hpp"

namespace pact {

namespace {

using Dim = std::optional<int>;

bool le(const Dim& a, const Dim& b) {
  if (!b) return true;
  if (!a) return false;
  return *a <= *b;
}

Dim plus(const Dim& a, const Dim& b, int extra) {
  if (!a || !b) return std::nullopt;
  return *a + *b + extra;
}

Dim max_dim(const Dim& a, const Dim& b) {
  if (!a || !b) return std::nullopt;
  return std::max(*a, *b);
}

struct Outcome {
  std::vector<CheckFailure> failures;
  std::vector<std::string> notes;
};

using InstanceCheck = std::function<Outcome(std::uint64_t, const PartialAction&)>;

Outcome guarded(const InstanceCheck& check, std::uint64_t s) {
  const PartialAction pa = corpus_instance(s);
  try {
    return check(s, pa);
  } catch (const std::exception& e) {
    return {{{s, instance_text(pa), std::string("error: ") + e.what(), "-"}}, {}};
  }
}

CheckReport run(const std::string& theorem, std::uint64_t seed, int count, const HarnessOptions& options,
                const InstanceCheck& check) {
  CheckReport report;
  report.theorem = theorem;
  report.instances = count;
  report.seed = seed;
  for (int i = 0; i < count; ++i) report.instance_seeds.push_back(instance_seed(seed, i));

  std::vector<Outcome> outcomes(count);
  const int threads = std::max(1, std::min(options.threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) outcomes[i] = guarded(check, report.instance_seeds[i]);
  } else {
    std::vector<std::future<void>> workers;
    for (int t = 0; t < threads; ++t)
      workers.push_back(std::async(std::launch::async, [&, t] {
        for (int i = t; i < count; i += threads) outcomes[i] = guarded(check, report.instance_seeds[i]);
      }));
    for (auto& w : workers) w.get();
  }
  for (auto& o : outcomes) {
    for (auto& f : o.failures) report.failures.push_back(std::move(f));
    for (auto& n : o.notes) report.notes.push_back(std::move(n));
  }
  return report;
}

CheckFailure failure(std::uint64_t s, const PartialAction& pa, std::string lhs, std::string rhs) {
  return {s, instance_text(pa), std::move(lhs), std::move(rhs)};
}

std::string blocks_text(const std::vector<int>& blocks) {
  std::string out = "[";
  for (std::size_t i = 0; i < blocks.size(); ++i) out += (i ? "," : "") + std::to_string(blocks[i]);
  return out + "]";
}

}  // namespace

std::string dimension_text(const std::optional<int>& d) { return d ? std::to_string(*d) : "infinity"; }

std::uint64_t instance_seed(std::uint64_t seed, int i) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(i + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

PartialAction corpus_instance(std::uint64_t s) {
  std::mt19937_64 rng(s);
  const int which = static_cast<int>(rng() % 6);
  const FiniteGroup group = which == 0   ? FiniteGroup::cyclic(2)
                            : which == 1 ? FiniteGroup::cyclic(3)
                            : which == 2 ? FiniteGroup::klein4()
                            : which == 3 ? FiniteGroup::cyclic(4)
                            : which == 4 ? FiniteGroup::cyclic(6)
                                         : FiniteGroup::symmetric(3);
  const bool free_ambient = rng() & 1;
  const int ambient = free_ambient ? group.order() * (1 + static_cast<int>(rng() % (12 / group.order())))
                                   : 1 + static_cast<int>(rng() % 12);
  static constexpr double kKeep[] = {0.5, 0.7, 0.9, 1.0};
  const double keep = kKeep[rng() % 4];
  return random_partial_action(rng(), group, ambient, keep, free_ambient);
}

std::vector<int> random_invariant_subset(const PartialAction& pa, std::uint64_t seed) {
  const auto orbits = translation_groupoid(pa).orbits;
  std::mt19937_64 rng(seed);
  std::vector<char> take(orbits.size(), 0);
  for (auto& t : take) t = static_cast<char>(rng() & 1);
  if (!orbits.empty()) {
    take[rng() % orbits.size()] = 1;
    if (orbits.size() > 1 && std::all_of(take.begin(), take.end(), [](char c) { return c; }))
      take[rng() % orbits.size()] = 0;
    if (std::none_of(take.begin(), take.end(), [](char c) { return c; })) take[0] = 1;
  }
  std::vector<int> subset;
  for (std::size_t k = 0; k < orbits.size(); ++k)
    if (take[k]) subset.insert(subset.end(), orbits[k].begin(), orbits[k].end());
  std::sort(subset.begin(), subset.end());
  return subset;
}

CheckReport check_globalization_theorem(std::uint64_t seed, int count, const HarnessOptions& options) {
  return run("globalization", seed, count, options, [&](std::uint64_t s, const PartialAction& pa) {
    Outcome o;
    const RokhlinDimension lhs = rokhlin_dimension(pa, options.search);
    const RokhlinDimension rhs = rokhlin_dimension(globalize(pa).envelope, options.search);
    if (lhs.value != rhs.value)
      o.failures.push_back(failure(s, pa, "dim " + dimension_text(lhs.value), "dim " + dimension_text(rhs.value)));
    if (lhs.commuting != rhs.commuting)
      o.failures.push_back(failure(s, pa, "commuting " + dimension_text(lhs.commuting),
                                   "commuting " + dimension_text(rhs.commuting)));
    return o;
  });
}

CheckReport check_strata_theorem(std::uint64_t seed, int count, const HarnessOptions& options) {
  return run("strata", seed, count, options, [&](std::uint64_t s, const PartialAction& drawn) {
    Outcome o;
    PartialAction whole = drawn;
    for (int attempt = 0; whole.size() == 0; ++attempt) whole = corpus_instance(instance_seed(s, attempt));
    const Stratification strat = stratification(whole);
    std::vector<int> nonempty;
    for (std::size_t k = 0; k < strat.strata.size(); ++k)
      if (!strat.strata[k].empty()) nonempty.push_back(static_cast<int>(k));
    if (nonempty.empty()) return o;
    std::mt19937_64 rng(s ^ 0x5747a7aULL);
    const int k = nonempty[rng() % nonempty.size()];
    const PartialAction pa = restrict_to(whole, strat.strata[k]).action;
    const int n = k + 1;
    if (!is_n_decomposable(pa, n)) {
      o.failures.push_back(failure(s, pa, "stratum " + std::to_string(n), "not decomposable"));
      return o;
    }
    const Dim lhs = rokhlin_dimension(pa, options.search).value;
    Dim rhs = 0;
    std::string parts;
    for (const auto& part : orbit_type_decomposition(pa, n)) {
      const Dim d = rokhlin_dimension(global_subsystem(pa, part.tau).action, options.search).value;
      rhs = max_dim(rhs, d);
      parts += (parts.empty() ? "" : ",") + dimension_text(d);
    }
    if (lhs != rhs)
      o.failures.push_back(failure(s, pa, dimension_text(lhs), "max(" + parts + ") = " + dimension_text(rhs)));
    return o;
  });
}

CheckReport check_monotonicity(std::uint64_t seed, int count, const HarnessOptions& options) {
  return run("monotonicity", seed, count, options, [&](std::uint64_t s, const PartialAction& pa) {
    Outcome o;
    const auto [sub, rest] = restrict_and_quotient(pa, random_invariant_subset(pa, s));
    const Dim whole = rokhlin_dimension(pa, options.search).value;
    const Dim a = rokhlin_dimension(sub.action, options.search).value;
    const Dim b = rokhlin_dimension(rest.action, options.search).value;
    if (!le(a, whole)) o.failures.push_back(failure(s, pa, "restriction " + dimension_text(a), dimension_text(whole)));
    if (!le(b, whole)) o.failures.push_back(failure(s, pa, "complement " + dimension_text(b), dimension_text(whole)));
    return o;
  });
}

CheckReport check_morita(std::uint64_t seed, int count, const HarnessOptions& options) {
  CheckReport report = run("morita", seed, count, options, [&](std::uint64_t s, const PartialAction& pa) {
    Outcome o;
    const RokhlinDimension rd = rokhlin_dimension(pa, options.search);
    const FDCStarAlgebra blocks = block_structure(crossed_product(pa).algebra, s);
    const FDCStarAlgebra fixed = fixed_point_algebra(pa);
    const bool morita = morita_equivalent(fixed, blocks);
    const BimoduleReport bm = imprimitivity_bimodule_verify(pa);
    if (rd.value) {
      if (!morita)
        o.failures.push_back(failure(s, pa, "fixed point blocks " + blocks_text(fixed.blocks),
                                     "crossed product blocks " + blocks_text(blocks.blocks)));
      if (!bm.all())
        o.failures.push_back(failure(s, pa, "bimodule clauses fail",
                                     "span " + std::to_string(bm.span_dimension) + " of " +
                                         std::to_string(bm.algebra_dimension)));
    } else {
      o.notes.push_back("seed " + std::to_string(s) + ": hypothesis fails (dim infinity); Morita " +
                        (morita ? "holds" : "fails") + ", right fullness span " +
                        std::to_string(bm.span_dimension) + " of " + std::to_string(bm.algebra_dimension));
    }
    return o;
  });
  return report;
}

CheckReport check_free_iff_finite(std::uint64_t seed, int count, const HarnessOptions& options) {
  CheckReport report = run("free-iff-finite", seed, count, options, [&](std::uint64_t s, const PartialAction& pa) {
    Outcome o;
    const bool free = is_free(pa).free;
    const Dim d = rokhlin_dimension(pa, options.search).value;
    if (free && d != 0) o.failures.push_back(failure(s, pa, "free", "dim " + dimension_text(d)));
    if (!free && d) o.failures.push_back(failure(s, pa, "not free", "dim " + dimension_text(d)));
    return o;
  });
  report.notes.insert(report.notes.begin(),
                      "free instances are required to have dimension 0, stronger than the |G|-1 bound");
  return report;
}

CheckReport check_extension_bound(std::uint64_t seed, int count, const HarnessOptions& options) {
  return run("extension-bound", seed, count, options, [&](std::uint64_t s, const PartialAction& pa) {
    Outcome o;
    const auto [sub, rest] = restrict_and_quotient(pa, random_invariant_subset(pa, s));
    const Dim whole = rokhlin_dimension(pa, options.search).value;
    const Dim a = rokhlin_dimension(sub.action, options.search).value;
    const Dim b = rokhlin_dimension(rest.action, options.search).value;
    const Dim bound = plus(a, b, 1);
    if (!le(whole, bound))
      o.failures.push_back(failure(s, pa, dimension_text(whole),
                                   dimension_text(a) + " + " + dimension_text(b) + " + 1"));
    return o;
  });
}

CheckReport check_block_oracle(std::uint64_t seed, int count, const HarnessOptions& options) {
  return run("block-oracle", seed, count, options, [&](std::uint64_t s, const PartialAction& pa) {
    Outcome o;
    const FDCStarAlgebra numeric = block_structure(crossed_product(pa).algebra, s);
    const FDCStarAlgebra comb = crossed_product_blocks_combinatorial(pa, s);
    if (numeric.blocks != comb.blocks)
      o.failures.push_back(failure(s, pa, "numeric " + blocks_text(numeric.blocks),
                                   "combinatorial " + blocks_text(comb.blocks)));
    int squares = 0;
    for (int m : numeric.blocks) squares += m * m;
    if (squares != pa.total_domain_size())
      o.failures.push_back(failure(s, pa, "sum of squares " + std::to_string(squares),
                                   "sum of domains " + std::to_string(pa.total_domain_size())));
    if (!(numeric.integrality_residual < 1e-6))
      o.failures.push_back(failure(s, pa, "integrality residual " + std::to_string(numeric.integrality_residual),
                                   "1e-6"));
    return o;
  });
}

std::vector<CheckReport> run_all_checks(std::uint64_t seed, int count, const HarnessOptions& options) {
  return {check_globalization_theorem(seed, count, options), check_strata_theorem(seed, count, options),
          check_monotonicity(seed, count, options),          check_morita(seed, count, options),
          check_free_iff_finite(seed, count, options),       check_extension_bound(seed, count, options)};
}

}  // namespace pact
