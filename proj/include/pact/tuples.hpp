#pragma once

#include <map>
#include <vector>

#include "pact/groups.hpp"
#include "pact/paction.hpp"

namespace pact {

/// An n-element subset of G containing the identity, as a sorted index list.
using Tuple = std::vector<int>;

/// Left translate g.tau, sorted.
Tuple translate(const FiniteGroup& group, int g, const Tuple& tau);

/// T_n(G) with the left-translation partial action Lt (Lt_g(tau) = g.tau on
/// tuples containing g^-1), its orbit space and the lexicographically least
/// section.
struct TupleSpace {
  FiniteGroup group;
  int n = 0;
  std::vector<Tuple> tuples;  // lexicographic
  PartialAction lt;           // on tuple indices
  std::vector<std::vector<int>> orbits;  // orbit space O_n(G), tuple indices
  std::vector<int> kappa;                // tuple index -> orbit index
  std::vector<int> section;              // orbit index -> tuple index (eta)

  /// Index of tau, or -1.
  int index_of(const Tuple& tau) const;
};

TupleSpace tuple_space(const FiniteGroup& group, int n);

struct StabilizerSection {
  Subgroup stabilizer;             // H_tau
  int m = 0;                       // m_tau = n/|H_tau| - 1
  std::vector<int> representatives;  // x_0 = 1, ..., x_m with tau = disjoint union H x_i
};

StabilizerSection stabilizer_and_section(const TupleSpace& ts, const Tuple& tau);

/// G.tau = {g.tau : g in tau^-1}, lexicographic.
std::vector<Tuple> orbit_of(const TupleSpace& ts, const Tuple& tau);

}  // namespace pact
