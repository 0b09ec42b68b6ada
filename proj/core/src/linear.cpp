#include "frontier/linear.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "frontier/errors.hpp"

namespace frontier {

namespace {

void take_min(ExtRational& acc, const ExtRational& v) {
  if (!v) return;
  if (!acc || *v < *acc) acc = v;
}

}  // namespace

LinearStagePlan analyze_linear(const ProblemInstance& inst, GermMode mode) {
  const std::size_t I = inst.route_count();
  const std::size_t J = inst.resource_count();

  LinearStagePlan plan;
  std::vector<ExtRational> germ_end(I);
  for (std::size_t i = 0; i < I; ++i) {
    const PiecewiseLinear& h = inst.h(i);
    if (mode == GermMode::Strict && !h.is_linear()) {
      throw InputError("route " + std::to_string(i + 1) +
                       " is not of the form rho (x - x*)+; use germ mode for piecewise-linear input");
    }
    plan.rho.push_back(h.germ_slope());
    plan.x_star.push_back(h.zero_end());
    germ_end[i] = h.germ_end();
  }

  RVector levels = plan.x_star;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<std::size_t> group(I);
  for (std::size_t i = 0; i < I; ++i) {
    group[i] = static_cast<std::size_t>(std::lower_bound(levels.begin(), levels.end(), plan.x_star[i]) -
                                        levels.begin());
  }
  plan.route_order.resize(I);
  std::iota(plan.route_order.begin(), plan.route_order.end(), std::size_t{0});
  std::stable_sort(plan.route_order.begin(), plan.route_order.end(),
                   [&](std::size_t a, std::size_t b) { return plan.x_star[a] < plan.x_star[b]; });

  std::vector<bool> covered(I, false);
  std::vector<bool> classified(J, false);
  std::size_t covered_count = 0;

  while (covered_count < I) {
    if (plan.stages.size() >= J) throw InvariantViolation("linear plan: stage count exceeds resource count");
    IndexSet K;
    for (std::size_t j = 0; j < J; ++j) {
      if (!classified[j]) K.push_back(j);
    }
    LinearStage stage;
    stage.lead_route = *std::find_if(plan.route_order.begin(), plan.route_order.end(),
                                     [&](std::size_t i) { return !covered[i]; });
    const std::size_t m = group[stage.lead_route];
    stage.group_level = levels[m];

    std::vector<Rational> a_j;
    a_j.reserve(K.size());
    for (std::size_t j : K) {
      Rational b(1);
      for (const LinearStage& prev : plan.stages) {
        if (prev.saturated) continue;
        Rational mass;
        for (std::size_t i : inst.resource(j)) {
          if (std::binary_search(prev.covered.begin(), prev.covered.end(), i) &&
              plan.x_star[i] == prev.group_level) {
            mass += plan.rho[i];
          }
        }
        b -= mass / prev.slope;
      }
      if (b.sign() <= 0) {
        throw InvariantViolation("linear plan: nonpositive residual coefficient b on resource " +
                                 std::to_string(j + 1));
      }
      Rational mass;
      for (std::size_t i : inst.resource(j)) {
        if (!covered[i] && group[i] == m) mass += plan.rho[i];
      }
      a_j.push_back(mass / b);
    }
    stage.slope = *std::max_element(a_j.begin(), a_j.end());

    if (stage.group_level.is_zero() && stage.slope <= Rational(1)) {
      // The cap binds: every remaining route follows F_i(t) = t.
      stage.saturated = true;
      stage.active = K;
      for (std::size_t i = 0; i < I; ++i) {
        if (covered[i]) continue;
        stage.covered.push_back(i);
        if (germ_end[i]) take_min(stage.t_cutoff, germ_end[i]);
      }
      take_min(plan.horizon, stage.t_cutoff);
      plan.saturated_tail = true;
      plan.stages.push_back(std::move(stage));
      break;
    }

    std::vector<bool> fresh(I, false);
    for (std::size_t n = 0; n < K.size(); ++n) {
      if (a_j[n] != stage.slope) continue;
      stage.active.push_back(K[n]);
      classified[K[n]] = true;
      for (std::size_t i : inst.resource(K[n])) {
        if (!covered[i]) fresh[i] = true;
      }
    }
    ExtRational group_cutoff;
    for (std::size_t i = 0; i < I; ++i) {
      if (!fresh[i]) continue;
      stage.covered.push_back(i);
      covered[i] = true;
      ++covered_count;
      if (group[i] == m && germ_end[i]) take_min(group_cutoff, germ_end[i]);
    }
    for (std::size_t j = 0; j < J; ++j) {
      if (classified[j]) continue;
      const IndexSet& g = inst.resource(j);
      if (std::all_of(g.begin(), g.end(), [&](std::size_t i) { return covered[i]; })) {
        stage.idle.push_back(j);
        classified[j] = true;
      }
    }

    if (m + 1 < levels.size()) stage.t_star = stage.slope * (levels[m + 1] - levels[m]);
    if (stage.slope < Rational(1)) stage.t_bar = stage.slope * stage.group_level / (stage.slope - Rational(1));
    if (group_cutoff) stage.t_cutoff = stage.slope * (*group_cutoff - stage.group_level);
    take_min(plan.horizon, stage.t_star);
    take_min(plan.horizon, stage.t_bar);
    take_min(plan.horizon, stage.t_cutoff);
    plan.stages.push_back(std::move(stage));
  }
  return plan;
}

RVector eval_linear_frontier(const LinearStagePlan& plan, const Rational& t) {
  if (t.sign() < 0) throw InputError("linear frontier needs t >= 0");
  if (plan.horizon && !(t < *plan.horizon)) {
    throw OutOfValidity("t = " + t.str() + " is at or beyond the plan horizon " + plan.horizon->str());
  }
  RVector F = plan.x_star;
  for (const LinearStage& s : plan.stages) {
    for (std::size_t i : s.covered) {
      F[i] = s.saturated ? t : std::max(s.group_level + t / s.slope, plan.x_star[i]);
    }
  }
  return F;
}

std::vector<Rational> derivative_at_zero(const LinearStagePlan& plan) {
  std::vector<Rational> out;
  out.reserve(plan.stages.size());
  for (const LinearStage& s : plan.stages) out.push_back(s.saturated ? Rational(1) : Rational(1) / s.slope);
  return out;
}

ExtRational monotonicity_horizon(const LinearStagePlan& plan) { return plan.horizon; }

std::vector<Rational> plan_breakpoints(const LinearStagePlan& plan) {
  std::vector<Rational> out;
  for (const LinearStage& s : plan.stages) {
    for (const ExtRational& v : {s.t_star, s.t_bar, s.t_cutoff}) {
      if (v) out.push_back(*v);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace frontier
