#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "frontier/errors.hpp"
#include "frontier/oracle.hpp"
#include "frontier/solver.hpp"

namespace frontier {
namespace {

using fixtures::lin;
using fixtures::R;

bool feasible(const ProblemInstance& inst, const Rational& t, const RVector& a) {
  for (std::size_t j = 0; j < inst.resource_count(); ++j) {
    if (t < fixtures::load(inst, j, a)) return false;
  }
  return true;
}

Rational max_gap(const RVector& a, const RVector& b) {
  Rational g;
  for (std::size_t i = 0; i < a.size(); ++i) g = std::max(g, abs(a[i] - b[i]));
  return g;
}

TEST(Oracle, CoordinateLattices) {
  const ProblemInstance inst = fixtures::two_resource_example();
  const auto l = coordinate_lattices(inst, R(1), {R(1, 2)});
  ASSERT_EQ(l.size(), 3u);
  // route 1: h = (x+2)⁺ <= 1 up to x = -1
  EXPECT_EQ(l[0], (RVector{R(-2), R(-3, 2), R(-1)}));
  EXPECT_EQ(l[1], (RVector{R(-2), R(-3, 2), R(-1), R(-1, 2), R(0)}));
  EXPECT_EQ(l[2], (RVector{R(-2), R(-3, 2), R(-1), R(-1, 2), R(0)}));
  EXPECT_EQ(lattice_size_estimate(inst, R(1), {R(1, 2)}), 75.0);
  EXPECT_THROW(coordinate_lattices(inst, R(-1), {R(1, 2)}), InputError);
  EXPECT_THROW(coordinate_lattices(inst, R(1), {R(0)}), InputError);
}

TEST(Oracle, DominatesTwoResourceExample) {
  const ProblemInstance inst = fixtures::two_resource_example();
  const GridSpec grid{R(1, 4)};
  const RVector F = solve(inst, R(2)).F;
  const DominanceResult dom = dominance_check(inst, R(2), grid, F);
  EXPECT_TRUE(dom.dominated);
  EXPECT_FALSE(dom.counterexample);
  EXPECT_GT(dom.feasible_count, 0u);
  EXPECT_LE(dom.feasible_count, dom.lattice_size);

  const RVector greedy = nested_maxmin_grid(inst, R(2), grid);
  EXPECT_EQ(greedy, (RVector{R(-1, 2), R(-1, 2), R(0)}));
  EXPECT_TRUE(feasible(inst, R(2), greedy));
  EXPECT_LE(max_gap(greedy, F), grid.step);

  EXPECT_EQ(nested_maxmin_grid(inst, R(6), {R(1, 12)}), (RVector{R(2, 3), R(7, 3), R(2, 3)}));
}

TEST(Oracle, CorruptedFrontierYieldsWitness) {
  const ProblemInstance inst = fixtures::two_resource_example();
  const RVector F = solve(inst, R(2)).F;
  RVector corrupted = F;
  corrupted[0] = R(-3, 2);
  const DominanceResult dom = dominance_check(inst, R(2), {R(1, 4)}, corrupted);
  ASSERT_FALSE(dom.dominated);
  ASSERT_TRUE(dom.counterexample);
  EXPECT_TRUE(feasible(inst, R(2), *dom.counterexample));
  EXPECT_FALSE(min_sensitive_leq(*dom.counterexample, corrupted));
  EXPECT_EQ(dom.relation, compare(*dom.counterexample, corrupted));
  EXPECT_NE(dom.relation, Relation::Less);
  EXPECT_NE(dom.relation, Relation::Equal);

  EXPECT_TRUE(feasible(inst, R(2), F));
  EXPECT_EQ(compare(F, corrupted), Relation::Greater);
}

TEST(Oracle, SmallCases) {
  const ProblemInstance single({{0}}, {lin(R(1), R(0))});
  const DominanceResult dom = dominance_check(single, R(1), {R(1, 8)}, RVector{R(1)});
  EXPECT_TRUE(dom.dominated);
  EXPECT_EQ(nested_maxmin_grid(single, R(1), {R(1, 8)}), RVector{R(1)});

  const ProblemInstance two = fixtures::two_resource_example();
  EXPECT_EQ(nested_maxmin_grid(two, R(0), {R(1, 4)}), two.zero_ends());
  EXPECT_TRUE(dominance_check(two, R(0), {R(1, 4)}, two.zero_ends()).dominated);
  EXPECT_THROW(dominance_check(two, R(2), {R(1, 4)}, RVector{R(0)}), InputError);
}

TEST(Oracle, RefusesLargeLattice) {
  const ProblemInstance seven = fixtures::seven_route_example();
  EXPECT_THROW(dominance_check(seven, R(5), {R(1, 10), std::nullopt, 10}, solve(seven, R(5)).F), LatticeTooLarge);
  try {
    dominance_check(seven, R(5), {R(1, 10), std::nullopt, 1000}, solve(seven, R(5)).F);
    FAIL() << "expected LatticeTooLarge";
  } catch (const LatticeTooLarge& e) {
    EXPECT_GT(e.estimate(), 1000.0);
    EXPECT_EQ(e.cap(), 1000u);
  }
  // The max-min side only walks lattice levels.
  const RVector greedy = nested_maxmin_grid(seven, R(5), {R(1, 10)});
  EXPECT_EQ(greedy[4], R(3, 5));
}

class OracleProperty : public ::testing::Test {
 protected:
  fixtures::Generator gen{2024};

  ProblemInstance small_instance() {
    const auto I = static_cast<std::size_t>(gen.integer(1, 3));
    std::vector<PiecewiseLinear> h;
    for (std::size_t i = 0; i < I; ++i) {
      h.push_back(gen.pwl(gen.on_grid(R(-2), R(0), 4), static_cast<std::size_t>(gen.integer(1, 3)), R(1, 2),
                          R(3), R(1)));
    }
    return ProblemInstance(gen.topology(I, static_cast<std::size_t>(gen.integer(1, 3))), std::move(h));
  }
};

// First-stage coordinates are frozen at most one step below the true level;
// the slack this leaves lets a later, shallower route rise by more than a step.
TEST(Oracle, DiscretizationCascadesIntoLaterStages) {
  const PiecewiseLinear steep = lin(R(6), R(-1));
  const ProblemInstance inst({{0, 1}, {0, 2}, {1, 2}}, {steep, steep, lin(R(1), R(0))});
  const RVector F = solve(inst, R(1)).F;
  EXPECT_EQ(F, (RVector{R(-11, 12), R(-11, 12), R(1, 2)}));

  const RVector coarse = nested_maxmin_grid(inst, R(1), {R(1, 8)});
  EXPECT_EQ(coarse, (RVector{R(-1), R(-1), R(1)}));
  EXPECT_TRUE(feasible(inst, R(1), coarse));
  EXPECT_EQ(max_gap(coarse, F), R(1, 2));
  EXPECT_TRUE(dominance_check(inst, R(1), {R(1, 8)}, F).dominated);

  // A lattice through -11/12 removes the cascade.
  EXPECT_EQ(nested_maxmin_grid(inst, R(1), {R(1, 12)}), F);
}

TEST_F(OracleProperty, DominanceAndFirstStageAgreement) {
  for (int k = 0; k < 12; ++k) {
    const ProblemInstance inst = small_instance();
    for (const Rational& t : {R(1, 2), R(1), R(2)}) {
      const FrontierValue v = solve(inst, t);
      for (const Rational& step : {R(1, 4), R(1, 8)}) {
        const GridSpec grid{step};
        ASSERT_TRUE(dominance_check(inst, t, grid, v.F).dominated) << "t=" << t.str() << " step=" << step.str();
        const RVector greedy = nested_maxmin_grid(inst, t, grid);
        ASSERT_TRUE(feasible(inst, t, greedy));
        ASSERT_TRUE(min_sensitive_leq(greedy, v.F));
        for (std::size_t i : v.decomposition.stages.front().covered) {
          ASSERT_LE(abs(greedy[i] - v.F[i]), step) << "route " << i;
        }
      }
    }
  }
}

}  // namespace
}  // namespace frontier
