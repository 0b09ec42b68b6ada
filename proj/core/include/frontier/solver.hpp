#pragma once

// Stage construction of the frontier F(t): the greatest element of
//   A_t = { a : a_i <= t for all i, sum_{i in G_j} h_i(a_i) <= t for all j }
// under the min-sensitive order. Each stage raises every still-free route to a
// common level until some remaining constraint becomes tight, freezes the
// routes of the tight resources, and sets aside resources that are fully
// covered but slack ("idle"). All decisions use exact rational equality.

#include <optional>
#include <vector>

#include "frontier/instance.hpp"

namespace frontier {

struct Stage {
  Rational level;   // f^(k)(t)
  IndexSet active;  // J^(k)
  IndexSet covered; // I^(k)
  IndexSet idle;    // N^(k)
};

struct StageDecomposition {
  std::vector<Stage> stages;
  bool terminal_saturated = false;  // last level reached the cap t

  std::size_t k_max() const { return stages.size(); }
  /// (J^(1), ..., J^(k_max)): the ordered-partition label of t.
  std::vector<IndexSet> partition_label() const;
};

struct FrontierValue {
  Rational t;
  RVector F;
  StageDecomposition decomposition;
};

/// Partially frozen frontier: entry i is set once route i has been covered.
using PartialAssignment = std::vector<std::optional<Rational>>;

struct StageSup {
  Rational level;
  IndexSet active;
  bool cap_binds = false;
};

/// The largest common level x <= t for the free routes of the resources in K,
/// given the frozen routes. `active` lists the resources tight at that level,
/// or all of K when the cap t binds.
StageSup stage_sup(const ProblemInstance& inst, const PartialAssignment& fixed, const IndexSet& K,
                   const Rational& t);

/// F(t) with its stage decomposition. Requires t >= 0.
FrontierValue solve(const ProblemInstance& inst, const Rational& t);

/// a ∈ A_t.
bool verify_membership(const ProblemInstance& inst, const Rational& t, const RVector& a);

/// Ordered sequence of disjoint nonempty resource blocks (J_1, ..., J_k).
struct OrderedPartition {
  std::vector<IndexSet> blocks;

  /// N_1, ..., N_k by the recursive covering rule. Throws InputError when the
  /// blocks are not a valid ordered partition for this instance.
  std::vector<IndexSet> idle_blocks(const ProblemInstance& inst) const;
};

/// Stage levels f^(1..k) computed directly from inverse functions along a fixed
/// partition, using one witness resource per block. Throws PartitionInfeasible
/// when the partition does not describe the stage structure at t (levels not
/// strictly increasing, a block constraint not tight, or a constraint violated).
std::vector<Rational> closed_form_recursion(const ProblemInstance& inst,
                                            const OrderedPartition& partition,
                                            const IndexSet& witnesses, const Rational& t);

struct ShiftedProblem {
  ProblemInstance canonical;
  Rational s;  // t - t0
};

/// Change of variables y = x - t0, s = t - t0. Throws InputError when some zero
/// end exceeds t0 or t < t0.
ShiftedProblem shift_reduce(const OffsetProblem& problem, const Rational& t);

/// Maps a canonical-frame solution back to the offset frame (adds t0 to t,
/// every F_i and every stage level).
FrontierValue unshift(FrontierValue value, const Rational& t0);

/// Solve an offset problem at t >= t0 and report in original coordinates.
FrontierValue solve_offset(const OffsetProblem& problem, const Rational& t);

}  // namespace frontier
