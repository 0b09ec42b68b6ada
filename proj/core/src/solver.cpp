#include "frontier/solver.hpp"

#include <algorithm>
#include <string>

#include "frontier/errors.hpp"

namespace frontier {

namespace {

PiecewiseLinear sum_over(const ProblemInstance& inst, const IndexSet& routes) {
  std::vector<PiecewiseLinear> parts;
  parts.reserve(routes.size());
  for (std::size_t i : routes) parts.push_back(inst.h(i));
  return sum(parts);
}

bool contains(const IndexSet& s, std::size_t x) { return std::binary_search(s.begin(), s.end(), x); }

IndexSet to_index_set(const std::vector<bool>& mask) {
  IndexSet out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(i);
  }
  return out;
}

}  // namespace

std::vector<IndexSet> StageDecomposition::partition_label() const {
  std::vector<IndexSet> label;
  label.reserve(stages.size());
  for (const auto& s : stages) label.push_back(s.active);
  return label;
}

StageSup stage_sup(const ProblemInstance& inst, const PartialAssignment& fixed, const IndexSet& K,
                   const Rational& t) {
  if (K.empty()) throw InputError("stage_sup needs a nonempty resource set");
  if (fixed.size() != inst.route_count()) throw InputError("partial assignment has wrong length");

  struct Row {
    std::size_t j;
    Rational frozen;     // sum of h_i(F_i) over frozen routes of G_j
    PiecewiseLinear free; // sum of h_i over free routes of G_j
  };
  std::vector<Row> rows;
  rows.reserve(K.size());
  std::optional<Rational> lowest;
  for (std::size_t j : K) {
    Rational frozen;
    IndexSet free_routes;
    for (std::size_t i : inst.resource(j)) {
      if (fixed[i]) {
        frozen += inst.h(i).eval(*fixed[i]);
      } else {
        free_routes.push_back(i);
      }
    }
    if (free_routes.empty()) {
      throw InputError("resource " + std::to_string(j + 1) + " has no free route left");
    }
    const Rational residual = t - frozen;
    if (residual.sign() < 0) {
      throw InvariantViolation("negative residual capacity on resource " + std::to_string(j + 1));
    }
    PiecewiseLinear g = sum_over(inst, free_routes);
    Rational sup = g.right_inverse(residual);
    if (!lowest || sup < *lowest) lowest = sup;
    rows.push_back({j, std::move(frozen), std::move(g)});
  }

  StageSup out;
  if (!(*lowest < t)) {
    out.level = t;
    out.active = K;
    out.cap_binds = true;
    return out;
  }
  out.level = *lowest;
  for (const Row& row : rows) {
    if (row.frozen + row.free.eval(out.level) == t) out.active.push_back(row.j);
  }
  if (out.active.empty()) throw InvariantViolation("no active constraint at stage level");
  return out;
}

FrontierValue solve(const ProblemInstance& inst, const Rational& t) {
  if (t.sign() < 0) throw InputError("solve needs t >= 0, got " + t.str());
  const std::size_t I = inst.route_count();
  const std::size_t J = inst.resource_count();

  PartialAssignment fixed(I);
  std::vector<bool> covered(I, false);
  std::vector<bool> classified(J, false);
  std::size_t covered_count = 0;

  FrontierValue out;
  out.t = t;
  StageDecomposition& dec = out.decomposition;

  while (covered_count < I) {
    if (dec.stages.size() >= J) throw InvariantViolation("stage count exceeds resource count");
    IndexSet K;
    for (std::size_t j = 0; j < J; ++j) {
      if (!classified[j]) K.push_back(j);
    }
    StageSup sup = stage_sup(inst, fixed, K, t);
    if (!dec.stages.empty() && !(dec.stages.back().level < sup.level)) {
      throw InvariantViolation("stage levels not strictly increasing");
    }

    Stage stage;
    stage.level = sup.level;
    stage.active = sup.active;
    if (sup.cap_binds) {
      for (std::size_t i = 0; i < I; ++i) {
        if (!covered[i]) {
          fixed[i] = t;
          covered[i] = true;
          stage.covered.push_back(i);
        }
      }
      covered_count = I;
      dec.terminal_saturated = true;
      dec.stages.push_back(std::move(stage));
      break;
    }

    std::vector<bool> fresh(I, false);
    for (std::size_t j : stage.active) {
      classified[j] = true;
      for (std::size_t i : inst.resource(j)) {
        if (!covered[i]) fresh[i] = true;
      }
    }
    stage.covered = to_index_set(fresh);
    if (stage.covered.empty()) throw InvariantViolation("stage covers no new route");
    for (std::size_t i : stage.covered) {
      fixed[i] = inst.h(i).level_sup(t, stage.level);
      covered[i] = true;
      ++covered_count;
    }
    for (std::size_t j = 0; j < J; ++j) {
      if (classified[j]) continue;
      const IndexSet& g = inst.resource(j);
      if (std::all_of(g.begin(), g.end(), [&](std::size_t i) { return covered[i]; })) {
        stage.idle.push_back(j);
        classified[j] = true;
      }
    }
    dec.stages.push_back(std::move(stage));
  }

  out.F.reserve(I);
  for (auto& v : fixed) out.F.push_back(std::move(*v));
  return out;
}

bool verify_membership(const ProblemInstance& inst, const Rational& t, const RVector& a) {
  if (a.size() != inst.route_count()) {
    throw InputError("vector has length " + std::to_string(a.size()) + ", instance has " +
                     std::to_string(inst.route_count()) + " routes");
  }
  for (const auto& x : a) {
    if (t < x) return false;
  }
  for (const IndexSet& g : inst.resources()) {
    Rational load;
    for (std::size_t i : g) load += inst.h(i).eval(a[i]);
    if (t < load) return false;
  }
  return true;
}

std::vector<IndexSet> OrderedPartition::idle_blocks(const ProblemInstance& inst) const {
  const std::size_t J = inst.resource_count();
  if (blocks.empty()) throw InputError("ordered partition has no blocks");
  std::vector<bool> in_blocks(J, false);
  std::vector<bool> in_idle(J, false);
  std::vector<bool> routes(inst.route_count(), false);
  std::vector<IndexSet> idle;
  for (const IndexSet& block : blocks) {
    if (block.empty()) throw InputError("ordered partition has an empty block");
    for (std::size_t j : block) {
      if (j >= J) throw InputError("partition references unknown resource " + std::to_string(j + 1));
      if (in_blocks[j]) throw InputError("partition blocks overlap at resource " + std::to_string(j + 1));
      in_blocks[j] = true;
      for (std::size_t i : inst.resource(j)) routes[i] = true;
    }
    IndexSet n;
    for (std::size_t j = 0; j < J; ++j) {
      if (in_blocks[j] || in_idle[j]) continue;
      const IndexSet& g = inst.resource(j);
      if (std::all_of(g.begin(), g.end(), [&](std::size_t i) { return routes[i]; })) n.push_back(j);
    }
    for (std::size_t j : n) in_idle[j] = true;
    idle.push_back(std::move(n));
  }
  for (std::size_t j = 0; j < J; ++j) {
    if (in_blocks[j] && in_idle[j]) {
      throw InputError("resource " + std::to_string(j + 1) + " is both in a block and idle");
    }
    if (!in_blocks[j] && !in_idle[j]) {
      throw InputError("partition does not account for resource " + std::to_string(j + 1));
    }
  }
  return idle;
}

std::vector<Rational> closed_form_recursion(const ProblemInstance& inst,
                                            const OrderedPartition& partition,
                                            const IndexSet& witnesses, const Rational& t) {
  if (t.sign() < 0) throw InputError("closed_form_recursion needs t >= 0");
  partition.idle_blocks(inst);  // validates
  const std::size_t k = partition.blocks.size();
  if (witnesses.size() != k) throw InputError("need exactly one witness per block");

  // Route blocks I_p.
  std::vector<IndexSet> route_blocks;
  std::vector<bool> seen(inst.route_count(), false);
  for (std::size_t p = 0; p < k; ++p) {
    if (!contains(partition.blocks[p], witnesses[p])) {
      throw InputError("witness " + std::to_string(witnesses[p] + 1) + " is not in block " +
                       std::to_string(p + 1));
    }
    std::vector<bool> fresh(inst.route_count(), false);
    for (std::size_t j : partition.blocks[p]) {
      for (std::size_t i : inst.resource(j)) {
        if (!seen[i]) fresh[i] = true;
      }
    }
    IndexSet block = to_index_set(fresh);
    for (std::size_t i : block) seen[i] = true;
    route_blocks.push_back(std::move(block));
  }

  std::vector<Rational> levels;
  for (std::size_t p = 0; p < k; ++p) {
    const IndexSet& g = inst.resource(witnesses[p]);
    Rational residual = t;
    IndexSet own;
    for (std::size_t i : g) {
      bool earlier = false;
      for (std::size_t l = 0; l < p; ++l) {
        if (contains(route_blocks[l], i)) {
          residual -= inst.h(i).eval(levels[l]);
          earlier = true;
          break;
        }
      }
      if (!earlier && contains(route_blocks[p], i)) own.push_back(i);
    }
    if (own.empty() || residual.sign() < 0) {
      throw PartitionInfeasible("block " + std::to_string(p + 1) + " has no capacity left at t = " + t.str());
    }
    Rational level = std::min(sum_over(inst, own).right_inverse(residual), t);
    if (!levels.empty() && !(levels.back() < level)) {
      throw PartitionInfeasible("levels not strictly increasing at block " + std::to_string(p + 1));
    }
    levels.push_back(std::move(level));
  }

  // Post-hoc consistency: feasible everywhere and tight on every block.
  RVector F(inst.route_count());
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t i : route_blocks[p]) F[i] = inst.h(i).level_sup(t, levels[p]);
  }
  for (std::size_t i = 0; i < inst.route_count(); ++i) {
    if (!seen[i]) throw PartitionInfeasible("partition leaves route " + std::to_string(i + 1) + " uncovered");
  }
  if (!verify_membership(inst, t, F)) {
    throw PartitionInfeasible("recursion produces an inadmissible vector at t = " + t.str());
  }
  for (std::size_t p = 0; p < k; ++p) {
    if (p + 1 == k && levels[p] == t) break;  // cap branch: no tightness required
    for (std::size_t j : partition.blocks[p]) {
      Rational load;
      for (std::size_t i : inst.resource(j)) load += inst.h(i).eval(F[i]);
      if (load != t) {
        throw PartitionInfeasible("resource " + std::to_string(j + 1) + " of block " +
                                  std::to_string(p + 1) + " is not tight at t = " + t.str());
      }
    }
  }
  return levels;
}

ShiftedProblem shift_reduce(const OffsetProblem& problem, const Rational& t) {
  if (t < problem.t0) {
    throw InputError("t = " + t.str() + " is below the offset t0 = " + problem.t0.str());
  }
  std::vector<PiecewiseLinear> h;
  h.reserve(problem.h.size());
  for (std::size_t i = 0; i < problem.h.size(); ++i) {
    if (problem.t0 < problem.h[i].zero_end()) {
      throw InputError("route " + std::to_string(i + 1) + ": zero end " + problem.h[i].zero_end().str() +
                       " exceeds t0 = " + problem.t0.str());
    }
    h.push_back(problem.h[i].shifted(problem.t0));
  }
  return {ProblemInstance(problem.resources, std::move(h)), t - problem.t0};
}

FrontierValue unshift(FrontierValue value, const Rational& t0) {
  value.t += t0;
  for (auto& x : value.F) x += t0;
  for (auto& s : value.decomposition.stages) s.level += t0;
  return value;
}

FrontierValue solve_offset(const OffsetProblem& problem, const Rational& t) {
  ShiftedProblem shifted = shift_reduce(problem, t);
  return unshift(solve(shifted.canonical, shifted.s), problem.t0);
}

}  // namespace frontier
