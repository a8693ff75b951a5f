#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pact/groups.hpp"

namespace pact {

/// Unvalidated partial-action data as read from an instance file or built by
/// hand. Points are 0..carrier_size-1; maps[g] lists (x, theta_g(x)) pairs.
struct PartialActionData {
  FiniteGroup group;
  int carrier_size = 0;
  std::vector<std::string> labels;  // optional; defaults to "0","1",...
  std::vector<std::vector<int>> domains;
  std::vector<std::vector<std::pair<int, int>>> maps;
};

/// A validated partial action of a finite group on a finite set: domains
/// X_g and bijections theta_g : X_{g^-1} -> X_g with X_1 = X, theta_1 = id
/// and the composition axiom. Immutable.
class PartialAction {
 public:
  /// Checks every axiom and reports the first violation with its witness:
  /// PointOutOfRange, IdentityDomainNotFull, NotBijective(g),
  /// IdentityMapNotIdentity, InverseMismatch(g), CompositionViolation(g,h,x).
  static PartialAction validate(const PartialActionData& raw);

  /// Global action from a permutation action: perm[g][x] = g.x.
  static PartialAction global(const FiniteGroup& group,
                              const std::vector<std::vector<int>>& perm,
                              std::vector<std::string> labels = {});

  const FiniteGroup& group() const { return group_; }
  int size() const { return n_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// x in X_g
  bool in_domain(int g, int x) const { return map_[index(group_.inv(g), x)] >= 0; }
  const std::vector<int>& domain(int g) const { return domains_[g]; }
  /// theta_g(x) for x in X_{g^-1}, otherwise -1.
  int apply(int g, int x) const { return map_[index(g, x)]; }
  bool defined(int g, int x) const { return map_[index(g, x)] >= 0; }

  bool is_global() const;
  /// Sum of |X_g| over the group.
  int total_domain_size() const;

  PartialActionData data() const;

  friend bool operator==(const PartialAction& a, const PartialAction& b) {
    return a.group_ == b.group_ && a.n_ == b.n_ && a.map_ == b.map_;
  }

 private:
  PartialAction(FiniteGroup group, int n) : group_(std::move(group)), n_(n) {}
  std::size_t index(int g, int x) const { return static_cast<std::size_t>(g) * n_ + x; }

  FiniteGroup group_;
  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> domains_;
  std::vector<int> map_;  // |G| x n, -1 where undefined
};

struct FreenessResult {
  bool free = true;
  std::optional<std::pair<int, int>> witness;  // (g, x) with g != 1 and theta_g(x) = x
};

FreenessResult is_free(const PartialAction& pa);

struct Arrow {
  int g;
  int source;
  int target;
};

struct TranslationGroupoid {
  std::vector<Arrow> arrows;
  std::vector<std::vector<int>> orbits;  // sorted, ordered by least point
  std::vector<int> orbit_of;             // point -> orbit index
  std::vector<Subgroup> stabilizers;     // at the least point of each orbit
};

TranslationGroupoid translation_groupoid(const PartialAction& pa);

/// Isotropy {g : x in X_{g^-1}, theta_g(x) = x}.
Subgroup stabilizer_at(const PartialAction& pa, int x);

/// A partial action on a subset together with the original point indices.
struct Restriction {
  PartialAction action;
  std::vector<int> points;
};

/// Restriction to a groupoid-invariant subset. Throws NotInvariant with the
/// crossing arrow (g, source, target) as witness.
Restriction restrict_to(const PartialAction& pa, std::vector<int> subset);

/// (restriction to S, restriction to X \ S). On a finite discrete carrier the
/// equivariant quotient by the invariant part S is the complement.
std::pair<Restriction, Restriction> restrict_and_quotient(const PartialAction& pa,
                                                          const std::vector<int>& subset);

PartialAction disjoint_union(const PartialAction& a, const PartialAction& b);

/// Relabels points: point x of pa becomes perm[x].
PartialAction permute_points(const PartialAction& pa, const std::vector<int>& perm);

struct GlobalizationResult {
  PartialAction envelope;            // global action on Y
  std::vector<int> embedding;        // iota : X -> Y
  std::vector<std::vector<int>> splitting;  // p_g, subsets of iota(X), indexed by g
};

/// Enveloping action on Y = (G x X)/~ with (g,x) ~ (h,y) iff x in X_{g^-1 h}
/// and theta_{h^-1 g}(x) = y; g.[h,x] = [gh,x] and iota(x) = [1,x].
GlobalizationResult globalize(const PartialAction& pa);

/// Central projections p_g in iota(X) whose translates partition Y, in the
/// greedy order P_k = sigma_{g_k}(iota X) minus the union over j > k.
std::vector<std::vector<int>> central_splitting(const PartialAction& envelope,
                                                const std::vector<int>& embedding);

struct CheckResult {
  bool ok = true;
  std::string detail;
};

/// Enveloping-action conditions: iota(X_g) = iota(X) cap sigma_g(iota X),
/// sigma_g extends theta_g, Y is the union of translates, and the splitting
/// translates partition Y.
CheckResult verify_globalization(const PartialAction& pa, const GlobalizationResult& gr);

/// Independent second construction of Y (direct class enumeration without
/// union-find) and search for an equivariant bijection fixing the embedding.
CheckResult check_globalization_uniqueness(const PartialAction& pa,
                                           const GlobalizationResult& gr);

/// Adds a point at infinity to X_1 only; the new point has index size().
PartialAction minimal_partial_unitization(const PartialAction& pa);

/// Random global G-set of `ambient_size` points (disjoint union of coset
/// spaces G/H for random subgroups H), restricted to a random subset that
/// keeps each point with `keep_probability`. Deterministic per seed. With
/// `free_ambient` every coset space is G itself and the ambient size is
/// rounded up to a multiple of |G|.
PartialAction random_partial_action(std::uint64_t seed, const FiniteGroup& group,
                                    int ambient_size, double keep_probability,
                                    bool free_ambient = false);

}  // namespace pact
