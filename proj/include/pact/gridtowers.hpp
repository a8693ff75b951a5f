#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "pact/paction.hpp"
#include "pact/rokhlin.hpp"

namespace pact {

using GridFunction = Eigen::VectorXd;

/// A partial action on grid points of 1-D chains or cycles. Tower functions
/// are admissible when they vanish off their domain and change by at most
/// lipschitz * spacing across every edge.
struct GridAction {
  PartialAction action;
  std::vector<double> coords;
  std::vector<int> component;
  std::vector<std::pair<int, int>> edges;
  double spacing = 1.0;
  double lipschitz = 8.0;

  int size() const { return action.size(); }
};

/// values[j][g] is f_g^(j) on the grid points, zero off X_g.
struct NumericTowers {
  int d = 0;
  std::vector<std::vector<GridFunction>> values;

  static NumericTowers zero(const GridAction& ga, int d);
};

/// Sup-norm violations of the three tower conditions: (1) equivariance with
/// witnesses x in F supported in X_{g^-1}, (2) per-level orthogonality,
/// (3) partition of unity, each multiplied by a in F.
struct ResidualBreakdown {
  double equivariance = 0.0;
  double orthogonality = 0.0;
  double partition = 0.0;
  int worst_point = -1;

  double total() const;
};

ResidualBreakdown residual_breakdown(const GridAction& ga, const NumericTowers& t,
                                     const std::vector<GridFunction>& F);
double residual(const GridAction& ga, const NumericTowers& t, const std::vector<GridFunction>& F);

struct Admissibility {
  bool ok = true;
  double worst_excess = 0.0;  // largest |f(p) - f(q)| - L h, or off-domain mass
  std::vector<int> witness;   // (j, g, p)
};

Admissibility check_admissible(const GridAction& ga, const NumericTowers& t, double tolerance = 1e-12);

enum class TowerVariant {
  Literal,    // towers exactly as displayed: level 1 restricted to (0,1) and (1,2]
  Corrected,  // level 1 carried entirely by g = 1, level 0 on the open halves
};

struct GridExample {
  GridAction action;
  NumericTowers towers;
  std::vector<GridFunction> F;
  double epsilon = 0.0;
  double delta = 0.0;
};

/// X = (0,2] sampled at 2k/m, k = 1..m, with the half shift on the two open
/// halves; towers from f_delta and e_delta. F = {x/2, |sin(pi x)|}.
/// Throws BadDelta unless 0 < delta < 1/4 and OddGrid for odd m.
GridExample example_4_5(double delta, int m, TowerVariant variant = TowerVariant::Corrected);

/// max(max_{x in F supported in U} |e_delta x - x| * max_a |a|, max_a |f_delta a - a|)
/// on the grid.
double example_4_5_bound(const GridExample& ex);

/// Two copies of (0,2) sampled at 2k/m, k = 1..m-1, with the half shift
/// combined with the flip, F = {(a,a), (b,b)} and epsilon = 3/16. No towers.
/// Throws GridTooCoarse for m < 16 and OddGrid for odd m.
GridExample example_3_2(int m);

/// The global model on two circles with towers f_1 = (0,1), f_{-1} = (1,0).
GridExample example_3_2_global(int m);

/// Exact d = 1 towers for example_3_2 at L = 8, built from
/// rho(t) = min(1, 8t, 8(2 - t)).
NumericTowers example_3_2_level_one_towers(const GridExample& ex);

/// Finite instance as a grid without edges; spacing 1.
GridAction from_partial_action(const PartialAction& pa, double lipschitz = 1e9);
NumericTowers embed_certificate(const PartialAction& pa, const TowerCertificate& cert);

enum class Parametrization {
  Levels,  // unknowns f_1^(j); f_g^(j) = f_1^(j) o theta_{g^-1}, so towers are exactly equivariant
  Free,    // every f_g^(j) independent; equivariance is a shrinking band
};

struct SearchTuning {
  Parametrization parametrization = Parametrization::Levels;
  int stages = 12;
  int sweeps_per_stage = 40;
  int polish_sweeps = 1500;
  double band_decay = 0.5;
  int threads = 1;
};

struct RestartTrace {
  int restart = 0;
  std::uint64_t seed = 0;
  double best_residual = 0.0;
  double final_residual = 0.0;
};

struct TowerSearchOutcome {
  NumericTowers towers;
  double best_residual = 0.0;
  int best_restart = -1;
  std::vector<RestartTrace> traces;
};

/// Alternating projections onto the support, Lipschitz, per-level
/// orthogonality and sum-to-one constraints. With Parametrization::Levels
/// orthogonality is sharpened softmax-style until one entry per level and
/// point survives, then the support is frozen and the remaining convex
/// constraints are cycled. With Parametrization::Free the orthogonality,
/// partition and equivariance bands shrink from epsilon to zero. Every
/// scored iterate is made exactly admissible first. Deterministic given the
/// seed; restarts use derived seeds and the lowest-index best restart wins.
TowerSearchOutcome search_towers(const GridAction& ga, const std::vector<GridFunction>& F, double epsilon,
                                 int d, double lipschitz, std::uint64_t seed, int restarts,
                                 const SearchTuning& tuning = {});

/// Whitespace-separated table: restart seed best final.
void write_traces(std::ostream& os, const TowerSearchOutcome& outcome);

}  // namespace pact
