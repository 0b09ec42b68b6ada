#include "frontier/analysis.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <thread>

#include "frontier/errors.hpp"
#include "frontier/linear.hpp"

namespace frontier {

std::vector<Rational> Trajectory::grid() const {
  std::vector<Rational> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.t);
  return out;
}

Trajectory sample_trajectory(const ProblemInstance& inst, const std::vector<Rational>& grid) {
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (grid[k].sign() < 0) throw InputError("grid contains negative time " + grid[k].str());
    if (k > 0 && !(grid[k - 1] < grid[k])) throw InputError("grid must be strictly increasing");
  }
  Trajectory traj{inst, std::vector<FrontierValue>(grid.size())};
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(grid.size(), 1));
  const std::size_t chunk = (grid.size() + workers - 1) / workers;
  std::vector<std::future<void>> jobs;
  for (std::size_t begin = 0; begin < grid.size(); begin += chunk) {
    const std::size_t end = std::min(grid.size(), begin + chunk);
    jobs.push_back(std::async(std::launch::async, [&, begin, end] {
      for (std::size_t k = begin; k < end; ++k) traj.samples[k] = solve(inst, grid[k]);
    }));
  }
  for (auto& job : jobs) job.get();
  return traj;
}

std::vector<PartitionSegment> detect_partitions(const Trajectory& traj) {
  std::vector<PartitionSegment> out;
  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    const FrontierValue& s = traj.samples[k];
    std::vector<IndexSet> label = s.decomposition.partition_label();
    if (!out.empty() && out.back().label == label) {
      out.back().last_sample = k;
      out.back().t_last = s.t;
      continue;
    }
    out.push_back({k, k, s.t, s.t, std::move(label)});
  }
  return out;
}

std::vector<MonotonicityViolation> check_monotonicity(const Trajectory& traj) {
  std::vector<MonotonicityViolation> out;
  for (std::size_t k = 0; k + 1 < traj.samples.size(); ++k) {
    const FrontierValue& a = traj.samples[k];
    const FrontierValue& b = traj.samples[k + 1];
    for (std::size_t i = 0; i < a.F.size(); ++i) {
      if (b.F[i] < a.F[i]) out.push_back({i, a.t, b.t, a.F[i], b.F[i]});
    }
  }
  return out;
}

std::vector<JumpCandidate> check_continuity(const Trajectory& traj, const ContinuityOptions& opts) {
  if (opts.gap_threshold.sign() <= 0) throw InputError("gap threshold must be positive");
  std::map<Rational, RVector> cache;
  for (const auto& s : traj.samples) cache.emplace(s.t, s.F);
  auto frontier_at = [&](const Rational& t) -> const RVector& {
    auto it = cache.find(t);
    if (it == cache.end()) it = cache.emplace(t, solve(traj.instance, t).F).first;
    return it->second;
  };

  std::vector<JumpCandidate> out;
  for (std::size_t k = 0; k + 1 < traj.samples.size(); ++k) {
    const std::size_t n = traj.samples[k].F.size();
    for (std::size_t i = 0; i < n; ++i) {
      Rational lo = traj.samples[k].t;
      Rational hi = traj.samples[k + 1].t;
      auto gap = [&](const Rational& a, const Rational& b) { return frontier_at(b)[i] - frontier_at(a)[i]; };
      if (!(opts.gap_threshold * (hi - lo) < abs(gap(lo, hi)))) continue;

      bool persists = true;
      for (int d = 0; d < opts.depth; ++d) {
        const Rational mid = (lo + hi) / Rational(2);
        if (abs(gap(lo, mid)) >= abs(gap(mid, hi))) {
          hi = mid;
        } else {
          lo = mid;
        }
        if (!(opts.gap_threshold * (hi - lo) < abs(gap(lo, hi)))) {
          persists = false;
          break;
        }
      }
      if (!persists) continue;

      const Rational width = hi - lo;
      const Rational right_slope = gap(hi, hi + width) / width;
      const Rational left_slope = lo < width ? right_slope : gap(lo - width, lo) / width;
      const Rational g = gap(lo, hi);
      out.push_back({i, lo, hi, g, g - (left_slope + right_slope) / Rational(2) * width});
    }
  }
  return out;
}

Rational lipschitz_estimate(const Trajectory& traj) {
  Rational best;
  for (std::size_t k = 0; k + 1 < traj.samples.size(); ++k) {
    const FrontierValue& a = traj.samples[k];
    const FrontierValue& b = traj.samples[k + 1];
    const Rational dt = b.t - a.t;
    for (std::size_t i = 0; i < a.F.size(); ++i) best = std::max(best, abs(b.F[i] - a.F[i]) / dt);
  }
  return best;
}

SlopeBounds slope_bounds(const ProblemInstance& inst) {
  SlopeBounds b{inst.h(0).min_slope_on_support(), inst.h(0).max_slope_on_support()};
  for (const auto& h : inst.h()) {
    b.lower = std::min(b.lower, h.min_slope_on_support());
    b.upper = std::max(b.upper, h.max_slope_on_support());
  }
  return b;
}

std::optional<Rational> lipschitz_envelope(const ProblemInstance& inst) {
  const SlopeBounds b = slope_bounds(inst);
  if (b.lower.sign() <= 0) return std::nullopt;
  const Rational base = Rational(1) + b.upper * Rational(static_cast<long>(inst.route_count())) / b.lower;
  Rational power(1);
  for (std::size_t j = 0; j < inst.resource_count(); ++j) power *= base;
  return power / b.lower;
}

bool reduction_cover_check(const Trajectory& traj, const std::vector<PartitionSegment>& segments) {
  std::vector<int> hits(traj.samples.size(), 0);
  for (const auto& seg : segments) {
    if (seg.last_sample >= traj.samples.size() || seg.last_sample < seg.first_sample) return false;
    for (std::size_t k = seg.first_sample; k <= seg.last_sample; ++k) ++hits[k];
    for (std::size_t k = seg.first_sample; k < seg.last_sample; ++k) {
      const RVector& a = traj.samples[k].F;
      const RVector& b = traj.samples[k + 1].F;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (b[i] < a[i]) return false;
      }
    }
  }
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

std::vector<Rational> default_grid(const ProblemInstance& inst, const Rational& start,
                                   const Rational& end, std::size_t intervals,
                                   const std::vector<Rational>& extra, bool include_plan_breakpoints) {
  if (start.sign() < 0) throw InputError("grid start must be >= 0");
  if (end < start) throw InputError("grid range is empty");
  if (intervals == 0) throw InputError("grid needs at least one interval");
  std::vector<Rational> grid;
  const Rational step = (end - start) / Rational(static_cast<long>(intervals));
  for (std::size_t k = 0; k <= intervals; ++k) grid.push_back(start + step * Rational(static_cast<long>(k)));
  auto in_range = [&](const Rational& t) { return start <= t && t <= end; };
  for (const auto& t : extra) {
    if (in_range(t)) grid.push_back(t);
  }
  if (include_plan_breakpoints) {
    try {
      for (const auto& t : plan_breakpoints(analyze_linear(inst, GermMode::Germ))) {
        if (in_range(t)) grid.push_back(t);
      }
    } catch (const InvariantViolation&) {
      // No usable linear germ; the uniform grid stands on its own.
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

TrajectoryReport analyze(const Trajectory& traj, const ContinuityOptions& opts) {
  TrajectoryReport r;
  r.grid = traj.grid();
  r.partition_segments = detect_partitions(traj);
  r.jump_candidates = check_continuity(traj, opts);
  r.monotonicity_violations = check_monotonicity(traj);
  r.lipschitz_estimate = lipschitz_estimate(traj);
  r.lipschitz_envelope = lipschitz_envelope(traj.instance);
  r.reduction_cover = reduction_cover_check(traj, r.partition_segments);
  return r;
}

}  // namespace frontier
