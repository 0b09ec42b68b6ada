#pragma once

// Sampled regularity checks for t ↦ F(t). Every verdict here is a statement
// about the sampled grid only; an empty violation list is not a proof.

#include <optional>
#include <vector>

#include "frontier/solver.hpp"

namespace frontier {

struct Trajectory {
  ProblemInstance instance;
  std::vector<FrontierValue> samples;  // strictly increasing t

  std::vector<Rational> grid() const;
};

/// Maximal run of consecutive samples sharing the label (J^(1), ..., J^(k_max)).
struct PartitionSegment {
  std::size_t first_sample = 0;
  std::size_t last_sample = 0;
  Rational t_first;
  Rational t_last;
  std::vector<IndexSet> label;
};

struct MonotonicityViolation {
  std::size_t coordinate = 0;
  Rational t;
  Rational t_next;
  Rational value;
  Rational value_next;
};

struct JumpCandidate {
  std::size_t coordinate = 0;
  Rational t_lo;   // bracket after refinement
  Rational t_hi;
  Rational gap;    // F_i(t_hi) - F_i(t_lo), signed
  Rational jump;   // gap minus the drift predicted by the neighbouring one-sided slopes
};

struct ContinuityOptions {
  Rational gap_threshold{10};
  int depth = 40;
};

/// Samples are independent and may be evaluated concurrently; the result is
/// identical to evaluating them in order. Throws InputError for a grid that is
/// not strictly increasing or contains negative times.
Trajectory sample_trajectory(const ProblemInstance& inst, const std::vector<Rational>& grid);

std::vector<PartitionSegment> detect_partitions(const Trajectory& traj);

std::vector<MonotonicityViolation> check_monotonicity(const Trajectory& traj);

/// Adjacent pairs with |ΔF_i| > gap_threshold · Δt are bisected; a bracket
/// whose gap still exceeds gap_threshold · Δt after `depth` halvings is
/// reported. With exact arithmetic the reported gap is exact.
std::vector<JumpCandidate> check_continuity(const Trajectory& traj, const ContinuityOptions& opts);

/// max over adjacent samples and coordinates of |ΔF_i| / Δt; 0 for < 2 samples.
Rational lipschitz_estimate(const Trajectory& traj);

/// Slope bounds c <= h_i' <= C on [x*_i, ∞) over all routes.
struct SlopeBounds {
  Rational lower;
  Rational upper;
};
SlopeBounds slope_bounds(const ProblemInstance& inst);

/// Conservative sanity envelope (1/c) (1 + C·I/c)^J for the Lipschitz constant.
/// Not a sharp constant; nullopt when c = 0.
std::optional<Rational> lipschitz_envelope(const ProblemInstance& inst);

/// Every sample lies in exactly one segment and no segment contains a
/// monotonicity violation between its own adjacent samples.
bool reduction_cover_check(const Trajectory& traj, const std::vector<PartitionSegment>& segments);

/// Uniform grid with `intervals` pieces on [start, end], plus any extra points
/// and the linear-germ breakpoints of the instance that fall inside the range.
std::vector<Rational> default_grid(const ProblemInstance& inst, const Rational& start,
                                   const Rational& end, std::size_t intervals,
                                   const std::vector<Rational>& extra = {},
                                   bool include_plan_breakpoints = true);

struct TrajectoryReport {
  std::vector<Rational> grid;
  std::vector<PartitionSegment> partition_segments;
  std::vector<JumpCandidate> jump_candidates;
  std::vector<MonotonicityViolation> monotonicity_violations;
  Rational lipschitz_estimate;
  std::optional<Rational> lipschitz_envelope;
  bool reduction_cover = true;
};

TrajectoryReport analyze(const Trajectory& traj, const ContinuityOptions& opts);

}  // namespace frontier
