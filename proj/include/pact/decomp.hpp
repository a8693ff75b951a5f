#pragma once

#include <vector>

#include "pact/paction.hpp"
#include "pact/tuples.hpp"

namespace pact {

/// tau(x) = {g : x in X_g}; always contains the identity.
Tuple domain_tuple(const PartialAction& pa, int x);

/// n-decomposition property, decided both from the set conditions
/// (X covered by the X_tau, X_tau disjoint from X_g for g outside tau) and
/// from |tau(x)| = n for every x. Disagreement is a logic error.
bool is_n_decomposable(const PartialAction& pa, int n);

/// 0 if no n works, otherwise the unique n (an empty carrier reports 0).
int decomposition_degree(const PartialAction& pa);

struct Extension {
  int k = 0;
  Restriction ideal;     // X_{=k}
  Restriction total;     // X_{<=k}
  Restriction quotient;  // X_{<=k-1}
};

/// Tuple-size filtration X_{<=1} in X_{<=2} in ... in X_{<=|G|} = X.
struct Stratification {
  std::vector<std::vector<int>> strata;  // strata[k-1] = X_{=k}
  std::vector<Extension> chain;          // k = 2..|G|, empty strata kept
};

Stratification stratification(const PartialAction& pa);

/// Rebuilds the partial action on the original points from X_{=1} and the
/// ideal parts of the chain.
PartialAction reassemble(const PartialAction& pa, const Stratification& strat);

struct OrbitTypePart {
  int orbit_class = 0;          // index into tuple_space(G, n).orbits
  Tuple tau;                    // section representative tau_z
  std::vector<int> points;      // X_{G.tau_z}
  std::vector<int> x_tau;       // X_{tau_z}
  Subgroup stabilizer;          // H_{tau_z}
};

/// One part per orbit class with nonempty X_{G.tau_z}. Throws NotDecomposable.
std::vector<OrbitTypePart> orbit_type_decomposition(const PartialAction& pa, int n);

struct GlobalSubsystem {
  PartialAction action;        // global action of H_tau (renumbered) on X_tau
  std::vector<int> points;     // X_tau in pa's indexing
  SubgroupAsGroup group;
};

/// The global action of H_tau on X_tau. Throws NotDecomposable or EmptyStratum.
GlobalSubsystem global_subsystem(const PartialAction& pa, const Tuple& tau);

}  // namespace pact
