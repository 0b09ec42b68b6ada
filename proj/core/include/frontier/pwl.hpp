#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "frontier/rational.hpp"

namespace frontier {

/// One piece to the right of the anchor: `slope` holds up to breakpoint `end`.
struct Segment {
  Rational end;
  Rational slope;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Continuous nondecreasing piecewise-linear function with exact rational data.
///
/// f ≡ 0 on (-inf, anchor]; to the right it follows the listed segments and
/// then `final_slope` > 0 forever, so f(x) → ∞. Instances are always stored in
/// canonical form: the anchor is moved to the zero end x* (the largest zero of
/// f), zero-length pieces are dropped and collinear neighbours are merged.
/// Two functions are equal iff their canonical forms are.
class PiecewiseLinear {
 public:
  /// Validates the invariants (increasing breakpoints, slopes >= 0,
  /// final slope > 0) and throws InputError otherwise.
  PiecewiseLinear(Rational anchor, std::vector<Segment> segments, Rational final_slope);

  /// rho * (x - x_star)⁺ with rho > 0.
  static PiecewiseLinear linear(Rational rho, Rational x_star);

  Rational eval(const Rational& x) const;
  Rational operator()(const Rational& x) const { return eval(x); }

  /// sup{x : f(x) = 0}.
  const Rational& zero_end() const { return xs_.front(); }

  /// Largest x with f(x) <= t, for t >= 0. On a flat spot at level t this is the
  /// right end of the level set. Throws InputError for negative t.
  Rational right_inverse(const Rational& t) const;

  /// sup{x <= cap : f(x) = f(v)}; requires v <= cap.
  Rational level_sup(const Rational& cap, const Rational& v) const;

  /// True iff every slope at or to the right of the zero end is positive.
  bool is_strictly_increasing_on_support() const;

  /// g(y) = f(y + offset).
  PiecewiseLinear shifted(const Rational& offset) const;

  /// Canonical segments (between the zero end and the last breakpoint).
  std::vector<Segment> segments() const;
  const Rational& final_slope() const { return final_slope_; }

  /// Breakpoints, starting with the zero end. values()[k] = f(knots()[k]).
  const std::vector<Rational>& knots() const { return xs_; }
  const std::vector<Rational>& values() const { return ys_; }

  /// Single kink at the zero end: f = rho (x - x*)⁺.
  bool is_linear() const { return xs_.size() == 1; }
  /// Right derivative at the zero end (positive in canonical form).
  Rational germ_slope() const;
  /// Where the first linear piece after the zero end stops; nullopt if it never does.
  std::optional<Rational> germ_end() const;

  Rational min_slope_on_support() const;
  Rational max_slope_on_support() const;

  friend bool operator==(const PiecewiseLinear&, const PiecewiseLinear&) = default;

 private:
  PiecewiseLinear(std::vector<Rational> xs, std::vector<Rational> ys, Rational final_slope);
  static PiecewiseLinear from_knots(std::vector<Rational> xs, std::vector<Rational> ys,
                                    Rational final_slope);
  void canonicalize();
  Rational slope_after(std::size_t k) const;

  friend PiecewiseLinear sum(std::span<const PiecewiseLinear> fs);
  friend PiecewiseLinear pointwise_max(std::span<const PiecewiseLinear> fs);

  std::vector<Rational> xs_;  // xs_[0] is the zero end
  std::vector<Rational> ys_;  // ys_[0] == 0
  Rational final_slope_;
};

/// Pointwise sum. Throws InputError on an empty list.
PiecewiseLinear sum(std::span<const PiecewiseLinear> fs);

/// Pointwise maximum. Throws InputError on an empty list.
PiecewiseLinear pointwise_max(std::span<const PiecewiseLinear> fs);

}  // namespace frontier
