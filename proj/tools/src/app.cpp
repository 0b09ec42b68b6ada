#include "frontier_cli/app.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "frontier/analysis.hpp"
#include "frontier/errors.hpp"
#include "frontier/linear.hpp"
#include "frontier/oracle.hpp"
#include "frontier/solver.hpp"
#include "frontier_cli/instance_io.hpp"

namespace frontier::cli {

using nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

// Exact strings by default; --float switches to (lossy) doubles.
struct Render {
  bool as_float = false;

  ordered_json num(const Rational& x) const {
    if (as_float) return x.to_double();
    return x.str();
  }
  ordered_json ext(const ExtRational& x) const { return x ? num(*x) : ordered_json("inf"); }
  ordered_json vec(const RVector& v) const {
    ordered_json out = ordered_json::array();
    for (const auto& x : v) out.push_back(num(x));
    return out;
  }
  std::string csv(const Rational& x) const {
    if (!as_float) return x.str();
    std::ostringstream os;
    os.precision(17);
    os << x.to_double();
    return os.str();
  }
};

ordered_json one_based(const IndexSet& s) {
  ordered_json out = ordered_json::array();
  for (std::size_t i : s) out.push_back(i + 1);
  return out;
}

Rational parse_flag(const std::string& text, const std::string& flag) {
  try {
    return Rational::parse(text);
  } catch (const InputError& e) {
    throw InputError("--" + flag + ": " + e.what());
  }
}

RVector parse_list(const std::string& text, const std::string& flag) {
  RVector out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(parse_flag(item, flag));
  }
  return out;
}

Rational to_local(const LoadedInstance& inst, const Rational& t) {
  if (t < inst.problem.t0) {
    throw InputError("t = " + t.str() + " is below the offset t0 = " + inst.problem.t0.str());
  }
  return t - inst.problem.t0;
}

// Range flags shared by trajectory and analyze.
struct RangeFlags {
  std::string t_start;
  std::string t_end;
  std::size_t steps = 0;
  std::string t_list;
  std::string extra;
  bool breakpoints = false;

  void attach(CLI::App* cmd, std::size_t default_steps) {
    steps = default_steps;
    cmd->add_option("--t-start", t_start, "First time (default: t0)");
    cmd->add_option("--t-end", t_end, "Last time");
    cmd->add_option("--steps", steps, "Number of uniform intervals")->capture_default_str();
    cmd->add_option("--t-list", t_list, "Comma-separated explicit times (replaces the range)");
    cmd->add_option("--extra", extra, "Comma-separated times added to the range grid");
  }

  // Grid in local (offset-free) time.
  std::vector<Rational> grid(const LoadedInstance& inst) const {
    if (!t_list.empty()) {
      RVector ts = parse_list(t_list, "t-list");
      if (ts.empty()) throw InputError("--t-list is empty");
      for (auto& t : ts) t = to_local(inst, t);
      std::sort(ts.begin(), ts.end());
      ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
      return ts;
    }
    if (t_end.empty()) throw InputError("need --t-end or --t-list");
    const Rational start = t_start.empty() ? inst.problem.t0 : parse_flag(t_start, "t-start");
    const Rational end = parse_flag(t_end, "t-end");
    if (end < start) throw InputError("empty range: --t-end " + end.str() + " < --t-start " + start.str());
    if (steps == 0) throw InputError("--steps must be >= 1");
    RVector extras;
    for (const auto& t : parse_list(extra, "extra")) {
      if (!(t < inst.problem.t0)) extras.push_back(to_local(inst, t));
    }
    return default_grid(inst.shifted, to_local(inst, start), to_local(inst, end), steps, extras, breakpoints);
  }
};

ordered_json stage_json(const Stage& s, const Rational& t0, const Render& r) {
  return {{"f", r.num(s.level + t0)}, {"J", one_based(s.active)}, {"I", one_based(s.covered)},
          {"N", one_based(s.idle)}};
}

// Default jump threshold: ten times the spread between the steepest and the
// shallowest positive slope of any constraint function, and at least ten.
Rational default_gap_threshold(const ProblemInstance& inst) {
  std::optional<Rational> lo;
  Rational hi;
  for (const auto& h : inst.h()) {
    std::vector<Rational> slopes{h.final_slope()};
    for (const auto& s : h.segments()) slopes.push_back(s.slope);
    for (const auto& s : slopes) {
      if (s.sign() <= 0) continue;
      if (!lo || s < *lo) lo = s;
      hi = std::max(hi, s);
    }
  }
  return Rational(10) * std::max(Rational(1), hi / *lo);
}

int cmd_solve(const std::string& path, const std::string& t_text, const Render& r, std::ostream& out) {
  const LoadedInstance inst = load_instance(path);
  const Rational t = parse_flag(t_text, "t");
  const FrontierValue v = unshift(solve(inst.shifted, to_local(inst, t)), inst.problem.t0);
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["t"] = r.num(v.t);
  doc["F"] = r.vec(v.F);
  doc["k_max"] = v.decomposition.k_max();
  doc["terminal_saturated"] = v.decomposition.terminal_saturated;
  doc["stages"] = ordered_json::array();
  for (const auto& s : v.decomposition.stages) doc["stages"].push_back(stage_json(s, Rational(0), r));
  out << doc.dump(2) << "\n";
  return kOk;
}

int cmd_trajectory(const std::string& path, const RangeFlags& range, const Render& r, std::ostream& out) {
  const LoadedInstance inst = load_instance(path);
  const Trajectory traj = sample_trajectory(inst.shifted, range.grid(inst));
  const auto segments = detect_partitions(traj);
  const Rational& t0 = inst.problem.t0;

  out << "t";
  for (std::size_t i = 0; i < inst.shifted.route_count(); ++i) out << ",F_" << i + 1;
  out << ",partition_id\n";
  for (std::size_t s = 0; s < segments.size(); ++s) {
    for (std::size_t k = segments[s].first_sample; k <= segments[s].last_sample; ++k) {
      const FrontierValue& v = traj.samples[k];
      out << r.csv(v.t + t0);
      for (const auto& x : v.F) out << "," << r.csv(x + t0);
      out << "," << s + 1 << "\n";
    }
  }
  return kOk;
}

int cmd_analyze(const std::string& path, const RangeFlags& range, const std::string& threshold_text, int depth,
                const Render& r, std::ostream& out) {
  const LoadedInstance inst = load_instance(path);
  ContinuityOptions opts;
  opts.gap_threshold = threshold_text.empty() ? default_gap_threshold(inst.shifted)
                                              : parse_flag(threshold_text, "gap-threshold");
  if (opts.gap_threshold.sign() <= 0) throw InputError("--gap-threshold must be positive");
  if (depth < 0) throw InputError("--depth must be >= 0");
  opts.depth = depth;
  const Rational& t0 = inst.problem.t0;

  const Trajectory traj = sample_trajectory(inst.shifted, range.grid(inst));
  const TrajectoryReport rep = analyze(traj, opts);

  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["grid_size"] = rep.grid.size();
  doc["t_first"] = rep.grid.empty() ? ordered_json() : r.num(rep.grid.front() + t0);
  doc["t_last"] = rep.grid.empty() ? ordered_json() : r.num(rep.grid.back() + t0);
  doc["gap_threshold"] = r.num(opts.gap_threshold);
  doc["depth"] = opts.depth;
  doc["partition_segments"] = ordered_json::array();
  for (std::size_t s = 0; s < rep.partition_segments.size(); ++s) {
    const auto& seg = rep.partition_segments[s];
    ordered_json label = ordered_json::array();
    for (const auto& block : seg.label) label.push_back(one_based(block));
    doc["partition_segments"].push_back({{"partition_id", s + 1},
                                         {"t_first", r.num(seg.t_first + t0)},
                                         {"t_last", r.num(seg.t_last + t0)},
                                         {"samples", seg.last_sample - seg.first_sample + 1},
                                         {"J", label}});
  }
  doc["monotonicity_violations"] = ordered_json::array();
  for (const auto& v : rep.monotonicity_violations) {
    doc["monotonicity_violations"].push_back({{"coordinate", v.coordinate + 1},
                                              {"t", r.num(v.t + t0)},
                                              {"t_next", r.num(v.t_next + t0)},
                                              {"value", r.num(v.value + t0)},
                                              {"value_next", r.num(v.value_next + t0)}});
  }
  doc["jump_candidates"] = ordered_json::array();
  for (const auto& j : rep.jump_candidates) {
    doc["jump_candidates"].push_back({{"coordinate", j.coordinate + 1},
                                      {"t_lo", r.num(j.t_lo + t0)},
                                      {"t_hi", r.num(j.t_hi + t0)},
                                      {"gap", r.num(j.gap)},
                                      {"jump", r.num(j.jump)}});
  }
  doc["lipschitz_estimate"] = r.num(rep.lipschitz_estimate);
  doc["lipschitz_envelope"] = rep.lipschitz_envelope ? r.num(*rep.lipschitz_envelope) : ordered_json();
  doc["reduction_cover"] = rep.reduction_cover;
  out << doc.dump(2) << "\n";

  const bool findings = !rep.monotonicity_violations.empty() || !rep.jump_candidates.empty() || !rep.reduction_cover;
  return findings ? kFinding : kOk;
}

struct OracleFlags {
  std::string t;
  std::string step = "1/8";
  std::uint64_t cap = 2'000'000;
  std::string lower;
  std::string check_vector;
};

int cmd_oracle(const std::string& path, const OracleFlags& f, const Render& r, std::ostream& out) {
  const LoadedInstance inst = load_instance(path);
  const Rational& t0 = inst.problem.t0;
  const Rational t = parse_flag(f.t, "t");
  const Rational s = to_local(inst, t);
  GridSpec grid{parse_flag(f.step, "step"), std::nullopt, f.cap};
  if (!f.lower.empty()) grid.lower = parse_flag(f.lower, "lower") - t0;

  const bool checking = !f.check_vector.empty();
  RVector vec;
  if (checking) {
    vec = parse_list(f.check_vector, "check-vector");
    for (auto& x : vec) x -= t0;
  } else {
    vec = solve(inst.shifted, s).F;
  }
  const DominanceResult dom = dominance_check(inst.shifted, s, grid, vec);

  auto lift = [&](RVector v) {
    for (auto& x : v) x += t0;
    return v;
  };
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["t"] = r.num(t);
  doc["step"] = r.num(grid.step);
  doc["cap"] = grid.cap;
  doc["mode"] = checking ? "check-vector" : "solver";
  doc["lattice_size"] = dom.lattice_size;
  doc["feasible_count"] = dom.feasible_count;
  doc["vector"] = r.vec(lift(vec));
  doc["dominated"] = dom.dominated;
  doc["counterexample"] = dom.counterexample ? r.vec(lift(*dom.counterexample)) : ordered_json();
  if (dom.counterexample) doc["relation"] = to_string(dom.relation);

  bool ok = dom.dominated;
  if (!checking) {
    const RVector greedy = nested_maxmin_grid(inst.shifted, s, grid);
    Rational gap;
    for (std::size_t i = 0; i < greedy.size(); ++i) gap = std::max(gap, abs(greedy[i] - vec[i]));
    doc["nested_maxmin"] = r.vec(lift(greedy));
    doc["max_gap"] = r.num(gap);
    doc["agreement"] = gap <= grid.step;
    ok = ok && gap <= grid.step;
  }
  out << doc.dump(2) << "\n";
  return ok ? kOk : kFinding;
}

int cmd_linear_plan(const std::string& path, bool germ, const Render& r, std::ostream& out) {
  const LoadedInstance inst = load_instance(path);
  const Rational& t0 = inst.problem.t0;
  const LinearStagePlan plan = analyze_linear(inst.shifted, germ ? GermMode::Germ : GermMode::Strict);
  auto shift = [&](const ExtRational& x) -> ExtRational {
    if (!x) return std::nullopt;
    return *x + t0;
  };

  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["horizon"] = r.ext(shift(plan.horizon));
  doc["saturated_tail"] = plan.saturated_tail;
  doc["germ_slopes"] = r.vec(plan.rho);
  RVector xs = plan.x_star;
  for (auto& x : xs) x += t0;
  doc["x_star"] = r.vec(xs);
  const auto derivs = derivative_at_zero(plan);
  doc["stages"] = ordered_json::array();
  for (std::size_t k = 0; k < plan.stages.size(); ++k) {
    const LinearStage& s = plan.stages[k];
    doc["stages"].push_back({{"a", s.saturated ? ordered_json() : r.num(s.slope)},
                             {"y", r.num(s.group_level + t0)},
                             {"lead_route", s.lead_route + 1},
                             {"J", one_based(s.active)},
                             {"I", one_based(s.covered)},
                             {"N", one_based(s.idle)},
                             {"t_star", r.ext(shift(s.t_star))},
                             {"t_bar", r.ext(shift(s.t_bar))},
                             {"t_cutoff", r.ext(shift(s.t_cutoff))},
                             {"saturated", s.saturated},
                             {"derivative_at_zero", r.num(derivs[k])}});
  }
  doc["derivatives_at_zero"] = r.vec(derivs);
  out << doc.dump(2) << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Greedy max-min frontier solver"};
  app.require_subcommand(1);
  Render render;
  app.add_flag("--float", render.as_float, "Render numbers as (lossy) decimals");

  std::string input;
  auto add_input = [&](CLI::App* cmd) { cmd->add_option("input", input, "Instance JSON file")->required(); };

  auto* solve_cmd = app.add_subcommand("solve", "Frontier F(t) and its stage decomposition");
  std::string t_text;
  add_input(solve_cmd);
  solve_cmd->add_option("--t", t_text, "Time")->required();

  auto* traj_cmd = app.add_subcommand("trajectory", "CSV of F over a time grid");
  RangeFlags traj_range;
  add_input(traj_cmd);
  traj_range.attach(traj_cmd, 100);
  traj_cmd->add_flag("--breakpoints", traj_range.breakpoints, "Add the linear-germ breakpoints to the grid");

  auto* analyze_cmd = app.add_subcommand("analyze", "Monotonicity, continuity and Lipschitz checks");
  RangeFlags analyze_range;
  analyze_range.breakpoints = true;
  std::string threshold;
  int depth = 40;
  add_input(analyze_cmd);
  analyze_range.attach(analyze_cmd, 256);
  analyze_cmd->add_option("--gap-threshold", threshold, "Jump threshold on |dF|/dt (default from slopes)");
  analyze_cmd->add_option("--depth", depth, "Bisection depth")->capture_default_str();

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force lattice check of the frontier");
  OracleFlags oracle;
  add_input(oracle_cmd);
  oracle_cmd->add_option("--t", oracle.t, "Time")->required();
  oracle_cmd->add_option("--step", oracle.step, "Lattice step")->capture_default_str();
  oracle_cmd->add_option("--cap", oracle.cap, "Maximum lattice size")->capture_default_str();
  oracle_cmd->add_option("--lower", oracle.lower, "Lowest lattice value (default: min zero end)");
  oracle_cmd->add_option("--check-vector", oracle.check_vector,
                         "Comma-separated vector to test instead of the solver output");

  auto* plan_cmd = app.add_subcommand("linear-plan", "Closed-form stage plan near t0");
  bool germ = false;
  add_input(plan_cmd);
  plan_cmd->add_flag("--germ", germ, "Accept piecewise-linear input and use the first piece of each h");

  std::vector<const char*> argv{"frontier"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(input, t_text, render, out);
    if (traj_cmd->parsed()) return cmd_trajectory(input, traj_range, render, out);
    if (analyze_cmd->parsed()) return cmd_analyze(input, analyze_range, threshold, depth, render, out);
    if (oracle_cmd->parsed()) return cmd_oracle(input, oracle, render, out);
    if (plan_cmd->parsed()) return cmd_linear_plan(input, germ, render, out);
  } catch (const LatticeTooLarge& e) {
    err << "error: lattice size estimate " << e.estimate() << " exceeds cap " << e.cap()
        << " (raise --cap or coarsen --step)\n";
    return kInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const OutOfValidity& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed instance: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInputError;
}

}  // namespace frontier::cli
