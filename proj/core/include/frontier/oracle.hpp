#pragma once

// Brute-force checks of the frontier on a finite lattice. Nothing in here calls
// the solver: only constraint evaluation and the order itself are used, so a
// disagreement points at one side or the other rather than at shared code.

#include <cstdint>
#include <optional>
#include <vector>

#include "frontier/instance.hpp"
#include "frontier/order.hpp"

namespace frontier {

struct GridSpec {
  Rational step;
  std::optional<Rational> lower{};  // defaults to min_i x*_i
  std::uint64_t cap = 2'000'000;
};

/// Per-coordinate candidate values: lower, lower + step, ... up to t, plus the
/// exact points x*_i and t. Sorted and deduplicated.
std::vector<RVector> coordinate_lattices(const ProblemInstance& inst, const Rational& t,
                                         const GridSpec& grid);

/// Product of the per-coordinate lattice sizes.
double lattice_size_estimate(const ProblemInstance& inst, const Rational& t, const GridSpec& grid);

struct DominanceResult {
  bool dominated = true;
  std::optional<RVector> counterexample;  // first feasible g with g ⪕ F failing
  Relation relation = Relation::Less;     // relation of the counterexample to F
  std::uint64_t feasible_count = 0;
  std::uint64_t lattice_size = 0;
};

/// Checks g ⪕ F for every feasible lattice vector g. Throws LatticeTooLarge
/// when the lattice exceeds the cap, InputError on bad arguments.
DominanceResult dominance_check(const ProblemInstance& inst, const Rational& t, const GridSpec& grid,
                                const RVector& F);

/// Greedy max-min directly on the feasible lattice vectors: raise the smallest
/// free coordinate as far as possible, freeze the coordinates whose resources
/// block the next level, repeat on the rest. Frozen coordinates sit up to one
/// step below the exact level, and later coordinates can pick up the slack, so
/// only the first stage is guaranteed to be within one step of the frontier.
RVector nested_maxmin_grid(const ProblemInstance& inst, const Rational& t, const GridSpec& grid);

}  // namespace frontier
