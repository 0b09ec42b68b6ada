#pragma once

#include <cstddef>
#include <vector>

#include "frontier/order.hpp"
#include "frontier/pwl.hpp"

namespace frontier {

/// Route sets G_j over routes 0..I-1 plus one constraint function h_i per route.
///
/// Invariants checked on construction: every G_j is nonempty, in range and
/// distinct from the others; the G_j cover all routes; every h_i vanishes at 0
/// or earlier (zero end <= 0).
class ProblemInstance {
 public:
  ProblemInstance(std::vector<IndexSet> resources, std::vector<PiecewiseLinear> h);

  std::size_t route_count() const { return h_.size(); }
  std::size_t resource_count() const { return resources_.size(); }
  const std::vector<IndexSet>& resources() const { return resources_; }
  const IndexSet& resource(std::size_t j) const { return resources_[j]; }
  const std::vector<PiecewiseLinear>& h() const { return h_; }
  const PiecewiseLinear& h(std::size_t i) const { return h_[i]; }

  /// x*_i for every route.
  RVector zero_ends() const;

 private:
  std::vector<IndexSet> resources_;
  std::vector<PiecewiseLinear> h_;
};

/// Same topology, but the admissible set is taken relative to a time offset t0:
/// sums are capped by t - t0 and zero ends may lie anywhere up to t0.
struct OffsetProblem {
  std::vector<IndexSet> resources;
  std::vector<PiecewiseLinear> h;
  Rational t0;
};

/// Checks the topology part of the instance invariants; throws InputError.
void validate_topology(const std::vector<IndexSet>& resources, std::size_t route_count);

}  // namespace frontier
