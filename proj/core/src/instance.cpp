#include "frontier/instance.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "frontier/errors.hpp"

namespace frontier {

void validate_topology(const std::vector<IndexSet>& resources, std::size_t route_count) {
  if (route_count == 0) throw InputError("instance needs at least one route");
  if (resources.empty()) throw InputError("instance needs at least one resource");
  std::vector<bool> covered(route_count, false);
  std::set<IndexSet> seen;
  for (std::size_t j = 0; j < resources.size(); ++j) {
    const IndexSet& g = resources[j];
    const std::string name = "resource " + std::to_string(j + 1);
    if (g.empty()) throw InputError(name + ": route set G_j must be nonempty");
    if (!std::is_sorted(g.begin(), g.end()) ||
        std::adjacent_find(g.begin(), g.end()) != g.end()) {
      throw InputError(name + ": route set must be sorted without duplicates");
    }
    for (std::size_t i : g) {
      if (i >= route_count) {
        throw InputError(name + ": route " + std::to_string(i + 1) + " out of range 1.." +
                         std::to_string(route_count));
      }
      covered[i] = true;
    }
    if (!seen.insert(g).second) throw InputError(name + ": route sets G_j must be pairwise distinct");
  }
  for (std::size_t i = 0; i < route_count; ++i) {
    if (!covered[i]) {
      throw InputError("route " + std::to_string(i + 1) + " is used by no resource (union of G_j must be all routes)");
    }
  }
}

ProblemInstance::ProblemInstance(std::vector<IndexSet> resources, std::vector<PiecewiseLinear> h)
    : resources_(std::move(resources)), h_(std::move(h)) {
  validate_topology(resources_, h_.size());
  for (std::size_t i = 0; i < h_.size(); ++i) {
    if (h_[i].zero_end().sign() > 0) {
      throw InputError("route " + std::to_string(i + 1) + ": zero end x* = " +
                       h_[i].zero_end().str() + " must be <= 0");
    }
  }
}

RVector ProblemInstance::zero_ends() const {
  RVector out;
  out.reserve(h_.size());
  for (const auto& f : h_) out.push_back(f.zero_end());
  return out;
}

}  // namespace frontier
