#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pact/error.hpp"
#include "pact/linalg.hpp"
#include "pact/paction.hpp"
#include "pact/rational.hpp"

namespace pact {

/// Exact towers: level j is f_1^(j) on X, and every other tower is derived as
/// f_g^(j) = f_1^(j) o theta_{g^-1} on X_g, zero elsewhere.
struct TowerCertificate {
  int d = 0;
  std::vector<Vector<Rational>> levels;

  /// f_g^(j) as a function on X.
  Vector<Rational> tower(const PartialAction& pa, int g, int j) const;
  /// All towers, indexed [j][g].
  std::vector<std::vector<Vector<Rational>>> towers(const PartialAction& pa) const;
  /// Same towers plus an all-zero level.
  TowerCertificate padded() const;
};

/// Exhaustive failure: the orbit `orbit` (points of X) admits no towers with
/// d+1 levels. `patterns` counts the support patterns tried there.
struct NonexistenceProof {
  int d = 0;
  std::vector<int> orbit;
  std::vector<std::vector<int>> maximal_supports;
  std::uint64_t patterns = 0;
};

inline constexpr std::uint64_t kDefaultSearchBudget = 10'000'000;

struct SearchOptions {
  std::uint64_t budget = kDefaultSearchBudget;  // per orbit
  bool reverse_orbit_order = false;
  int threads = 1;
  bool exact_cover_at_zero = true;  // otherwise d = 0 also goes through supports
};

using TowerSearchResult = std::variant<TowerCertificate, NonexistenceProof>;

/// Decides whether exact towers with d+1 levels exist. d = 0 is an exact
/// cover problem; larger d enumerates, per orbit, multisets of maximal
/// admissible supports and solves each with an exact linear feasibility
/// check. Throws SearchBudgetExceeded with the explored fraction.
TowerSearchResult towers_exist(const PartialAction& pa, int d, const SearchOptions& options = {});

struct RokhlinDimension {
  std::optional<int> value;      // nullopt is infinity
  std::optional<int> commuting;  // towers commute in a function algebra
  std::optional<TowerCertificate> certificate;
  bool free = false;
};

RokhlinDimension rokhlin_dimension(const PartialAction& pa, const SearchOptions& options = {});

struct CertificateCheck {
  bool ok = true;
  std::string condition;  // "range", "support", "C1", "C2", "C3" or "raw(k)"
  std::vector<int> witness;
  std::string detail;
};

/// Exact check of the certificate, then of the raw tower conditions with the
/// indicator functions and the unit as test elements, at tolerance zero.
CertificateCheck verify_certificate(const PartialAction& pa, const TowerCertificate& cert);

/// Pairwise orthogonal lifts in the algebra of functions on {0..size-1}:
/// ideals are subsets, the quotient by J is restriction to the complement.
/// Given [0,1]-valued x_j supported in A_j with x_j x_k supported in J,
/// returns y_j <= x_j, pairwise orthogonal, equal to x_j off J.
template <typename Scalar>
std::vector<Vector<Scalar>> orthogonal_lifts(int size, const std::vector<int>& J,
                                             const std::vector<std::vector<int>>& ideals,
                                             const std::vector<Vector<Scalar>>& x) {
  const std::size_t n = x.size();
  if (ideals.size() != n)
    throw Error(ErrorCode::PreconditionViolated, "one ideal per function is required");
  std::vector<char> in_j(size, 0);
  for (int p : J) in_j.at(p) = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (x[j].size() != size) throw Error(ErrorCode::PreconditionViolated, "function size mismatch");
    std::vector<char> in_a(size, 0);
    for (int p : ideals[j]) in_a.at(p) = 1;
    for (int p = 0; p < size; ++p) {
      if (x[j](p) < Scalar(0) || x[j](p) > Scalar(1))
        throw Error(ErrorCode::PreconditionViolated, "not a positive contraction", {static_cast<int>(j), p});
      if (x[j](p) != Scalar(0) && !in_a[p])
        throw Error(ErrorCode::PreconditionViolated, "support leaves its ideal", {static_cast<int>(j), p});
      for (std::size_t k = 0; k < j; ++k)
        if (!in_j[p] && x[j](p) * x[k](p) != Scalar(0))
          throw Error(ErrorCode::PreconditionViolated, "product not in J",
                      {static_cast<int>(k), static_cast<int>(j), p});
    }
  }
  auto positive_part = [](Vector<Scalar> v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (v(i) < Scalar(0)) v(i) = Scalar(0);
    return v;
  };
  std::vector<Vector<Scalar>> y(x);
  // peel off the last function against the sum of the others, then recurse
  std::vector<Vector<Scalar>> z(x);
  for (std::size_t m = n; m >= 2; --m) {
    Vector<Scalar> rest = Vector<Scalar>::Zero(size);
    for (std::size_t j = 0; j + 1 < m; ++j) rest += z[j];
    y[m - 1] = positive_part(z[m - 1] - rest);
    for (std::size_t j = 0; j + 1 < m; ++j) z[j] = positive_part(z[j] - z[m - 1]);
  }
  if (n > 0) y[0] = z[0];
  return y;
}

}  // namespace pact
