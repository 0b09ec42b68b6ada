#pragma once

// Closed-form frontier for h_i(x) = rho_i (x - x*_i)⁺ near t = 0.
//
// Routes are grouped by equal zero ends y*_1 < ... < y*_m. Each stage k picks
// the lowest uncovered group, sets f^(k)(t) = y*_{m(k)} + t / a^(k) with
//   a^(k) = max_j (1 / b_j) * sum of rho_i over the free routes of G_j in that group,
//   b_j   = 1 - sum_{p<k} (1 / a^(p)) * sum of rho_i over G_j ∩ I^(p) in group m(p),
// and stays valid until the first stage breakpoint (t*, t̄, or the germ
// cutoff when the functions are only linear near their zero ends).

#include <optional>
#include <vector>

#include "frontier/instance.hpp"

namespace frontier {

/// nullopt encodes +infinity.
using ExtRational = std::optional<Rational>;

struct LinearStage {
  std::size_t lead_route = 0;  // i^(k): least uncovered route in x*-order
  Rational group_level;        // y*_{m(k)}
  Rational slope;              // a^(k)
  IndexSet active;             // J^(k)_L
  IndexSet covered;            // I^(k)_L
  IndexSet idle;               // N^(k)_L
  ExtRational t_star;
  ExtRational t_bar;
  ExtRational t_cutoff;        // germ validity cutoff; nullopt for truly linear routes
  bool saturated = false;      // f^(k)(t) = t for the remaining routes
};

struct LinearStagePlan {
  std::vector<LinearStage> stages;
  ExtRational horizon;
  bool saturated_tail = false;
  RVector rho;     // germ slopes, original route order
  RVector x_star;  // original route order
  IndexSet route_order;  // routes sorted by (x*, index)
};

enum class GermMode {
  Strict,  // every h_i must be rho (x - x*)⁺
  Germ,    // use the first piece at each zero end and cap the horizon accordingly
};

/// Throws InputError (NonLinear) when a route is not single-kink in Strict mode.
LinearStagePlan analyze_linear(const ProblemInstance& inst, GermMode mode = GermMode::Strict);

/// F(t) from the plan; requires 0 <= t < horizon, otherwise OutOfValidity.
RVector eval_linear_frontier(const LinearStagePlan& plan, const Rational& t);

/// One-sided derivatives of f^(1), ..., f^(k_max) at 0.
std::vector<Rational> derivative_at_zero(const LinearStagePlan& plan);

ExtRational monotonicity_horizon(const LinearStagePlan& plan);

/// Every finite t*, t̄ and germ cutoff of the plan, sorted and deduplicated.
std::vector<Rational> plan_breakpoints(const LinearStagePlan& plan);

}  // namespace frontier
