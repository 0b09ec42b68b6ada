#pragma once

// Shared instances and seeded generators for the test binaries.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "frontier/instance.hpp"

namespace fixtures {

using frontier::IndexSet;
using frontier::PiecewiseLinear;
using frontier::ProblemInstance;
using frontier::Rational;
using frontier::RVector;
using frontier::Segment;

inline Rational R(long p, long q = 1) { return Rational(p, q); }

inline PiecewiseLinear lin(Rational rho, Rational x_star) {
  return PiecewiseLinear::linear(std::move(rho), std::move(x_star));
}

// Two resources, three routes: G1 = {1,2}, G2 = {1,3}; h = (x+2)⁺, (x+1)⁺, 5x⁺.
inline ProblemInstance two_resource_example() {
  return ProblemInstance({{0, 1}, {0, 2}}, {lin(R(1), R(-2)), lin(R(1), R(-1)), lin(R(5), R(0))});
}

// Seven routes over four resources where route 5 decreases on [3, 8].
inline ProblemInstance seven_route_example() {
  return ProblemInstance({{0, 2, 5}, {1, 3, 6}, {2, 3, 4, 5, 6}, {5, 6}},
                         {lin(R(2), R(-11)), lin(R(2), R(-11)), lin(R(1), R(-11)), lin(R(1), R(-11)),
                          lin(R(1), R(0)), lin(R(2), R(-10)), lin(R(2), R(-10))});
}

// Merged five-route variant of the above; every resource has a private route.
inline ProblemInstance five_route_example() {
  const PiecewiseLinear merged(R(-11), {{R(-10), R(1)}}, R(3));  // (x+11)⁺ + 2(x+10)⁺
  return ProblemInstance({{0, 2}, {1, 3}, {2, 3, 4}},
                         {lin(R(2), R(-11)), lin(R(2), R(-11)), merged, merged, lin(R(1), R(0))});
}

// Single route, h = 2(x⁺ ∧ 1) + 2(x − 2)⁺: flat on [1, 2], so F jumps at t = 2.
inline ProblemInstance jump_example() {
  return ProblemInstance({{0}}, {PiecewiseLinear(R(0), {{R(1), R(2)}, {R(2), R(0)}}, R(2))});
}

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  // Uniform on {lo, lo + 1/den, ..., hi}.
  Rational on_grid(const Rational& lo, const Rational& hi, long den) {
    const Rational span = (hi - lo) * Rational(den);
    const long steps = static_cast<long>(std::floor(span.to_double() + 1e-9));
    return lo + Rational(integer(0, steps), den);
  }

  // Random rational in [lo, hi] with a denominator up to max_den.
  Rational rational(const Rational& lo, const Rational& hi, long max_den) {
    return on_grid(lo, hi, integer(1, max_den));
  }

  // Distinct nonempty route sets covering 0..routes-1.
  std::vector<IndexSet> topology(std::size_t routes, std::size_t resources) {
    const std::size_t max_sets = (std::size_t{1} << routes) - 1;
    resources = std::min(resources, max_sets);
    while (true) {
      std::set<IndexSet> sets;
      while (sets.size() < resources) {
        IndexSet g;
        for (std::size_t i = 0; i < routes; ++i) {
          if (integer(0, 1) == 1) g.push_back(i);
        }
        if (!g.empty()) sets.insert(g);
      }
      std::vector<bool> covered(routes, false);
      for (const auto& g : sets) {
        for (std::size_t i : g) covered[i] = true;
      }
      if (std::all_of(covered.begin(), covered.end(), [](bool b) { return b; })) {
        std::vector<IndexSet> out(sets.begin(), sets.end());
        std::shuffle(out.begin(), out.end(), rng_);
        return out;
      }
    }
  }

  // Piecewise-linear h with `pieces` pieces after the zero end (the last one
  // unbounded). Slopes are drawn on the 1/4 grid of [slope_lo, slope_hi]; the
  // first and the unbounded piece always get a positive slope, so x_star stays
  // the zero end.
  PiecewiseLinear pwl(const Rational& x_star, std::size_t pieces, const Rational& slope_lo,
                      const Rational& slope_hi, const Rational& max_width) {
    const Rational positive_lo = slope_lo.sign() > 0 ? slope_lo : Rational(1, 4);
    std::vector<Segment> segs;
    Rational x = x_star;
    for (std::size_t k = 0; k + 1 < pieces; ++k) {
      x += on_grid(Rational(1, 4), max_width, 4);
      segs.push_back({x, on_grid(k == 0 ? positive_lo : slope_lo, slope_hi, 4)});
    }
    return PiecewiseLinear(x_star, std::move(segs), on_grid(positive_lo, slope_hi, 4));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Sum of h_i(a_i) over G_j, computed directly from the knot lists.
inline Rational load(const ProblemInstance& inst, std::size_t j, const RVector& a) {
  Rational s;
  for (std::size_t i : inst.resource(j)) s += inst.h(i).eval(a[i]);
  return s;
}

}  // namespace fixtures
