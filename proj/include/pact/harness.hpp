#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pact/paction.hpp"
#include "pact/rokhlin.hpp"

namespace pact {

struct CheckFailure {
  std::uint64_t seed = 0;
  std::string instance;  // JSON instance text, replayable with parse_instance
  std::string lhs;
  std::string rhs;
};

struct CheckReport {
  std::string theorem;
  int instances = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> instance_seeds;
  std::vector<CheckFailure> failures;
  std::vector<std::string> notes;  // informational, never failures

  bool ok() const { return failures.empty(); }
};

struct HarnessOptions {
  int threads = 1;
  SearchOptions search;
};

/// Seed of the i-th corpus instance.
std::uint64_t instance_seed(std::uint64_t seed, int i);

/// Corpus generator: group among cyclic(2), cyclic(3), klein4, cyclic(4),
/// cyclic(6), symmetric(3); 1 to 12 ambient points; keep probability among
/// 0.5, 0.7, 0.9, 1. Half the instances restrict a free global action.
PartialAction corpus_instance(std::uint64_t instance_seed);

/// Orbits of pa, then a random nonempty union of them (proper when there
/// are at least two orbits).
std::vector<int> random_invariant_subset(const PartialAction& pa, std::uint64_t seed);

CheckReport check_globalization_theorem(std::uint64_t seed, int count, const HarnessOptions& options = {});
CheckReport check_strata_theorem(std::uint64_t seed, int count, const HarnessOptions& options = {});
CheckReport check_monotonicity(std::uint64_t seed, int count, const HarnessOptions& options = {});
CheckReport check_morita(std::uint64_t seed, int count, const HarnessOptions& options = {});
CheckReport check_free_iff_finite(std::uint64_t seed, int count, const HarnessOptions& options = {});
CheckReport check_extension_bound(std::uint64_t seed, int count, const HarnessOptions& options = {});

/// Numeric blocks of the crossed product against the orbit/stabilizer count,
/// sum of squares against the total domain size, integrality residual.
CheckReport check_block_oracle(std::uint64_t seed, int count, const HarnessOptions& options = {});

std::vector<CheckReport> run_all_checks(std::uint64_t seed, int count, const HarnessOptions& options = {});

std::string dimension_text(const std::optional<int>& d);

}  // namespace pact
