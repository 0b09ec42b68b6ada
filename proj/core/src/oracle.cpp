#include "frontier/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <limits>
#include <span>
#include <string>
#include <thread>

#include "frontier/errors.hpp"

namespace frontier {

namespace {

using Rank = std::uint32_t;

// Lattice in rank form: coordinate i may take values[ranks[i][k]], and
// load[i][k] = h_i at that value.
struct RankedLattice {
  RVector values;                        // global sorted value table
  std::vector<std::vector<Rank>> ranks;
  std::vector<RVector> load;
  std::vector<IndexSet> resources_of;    // route -> resources containing it
  std::size_t resource_count = 0;
  std::uint64_t size = 0;
};

Rank rank_of(const RVector& values, const Rational& x) {
  return static_cast<Rank>(std::lower_bound(values.begin(), values.end(), x) - values.begin());
}

RankedLattice build_lattice(const ProblemInstance& inst, const Rational& t, const GridSpec& grid,
                            const RVector& extra_values) {
  const double estimate = lattice_size_estimate(inst, t, grid);
  if (estimate > static_cast<double>(grid.cap)) throw LatticeTooLarge(estimate, grid.cap);

  const std::vector<RVector> lattices = coordinate_lattices(inst, t, grid);
  RankedLattice out;
  out.size = static_cast<std::uint64_t>(estimate);
  for (const RVector& l : lattices) out.values.insert(out.values.end(), l.begin(), l.end());
  out.values.insert(out.values.end(), extra_values.begin(), extra_values.end());
  std::sort(out.values.begin(), out.values.end());
  out.values.erase(std::unique(out.values.begin(), out.values.end()), out.values.end());

  out.resource_count = inst.resource_count();
  out.resources_of.resize(inst.route_count());
  for (std::size_t j = 0; j < inst.resource_count(); ++j) {
    for (std::size_t i : inst.resource(j)) out.resources_of[i].push_back(j);
  }
  for (std::size_t i = 0; i < lattices.size(); ++i) {
    std::vector<Rank> r;
    RVector h;
    for (const Rational& x : lattices[i]) {
      r.push_back(rank_of(out.values, x));
      h.push_back(inst.h(i).eval(x));
    }
    out.ranks.push_back(std::move(r));
    out.load.push_back(std::move(h));
  }
  return out;
}

// Depth-first walk over feasible lattice vectors in lexicographic order of
// lattice position, with the leading coordinate restricted to [first, last).
// Lattices are sorted and every h_i is nondecreasing, so once a resource
// overflows at position k it overflows for every later position too.
void enumerate(const RankedLattice& lat, const Rational& t, std::size_t first, std::size_t last,
               const std::function<void(std::span<const Rank>)>& visit) {
  const std::size_t n = lat.ranks.size();
  std::vector<Rank> current(n);
  std::vector<Rational> used(lat.resource_count);

  std::function<void(std::size_t)> step = [&](std::size_t i) {
    if (i == n) {
      visit(current);
      return;
    }
    const std::size_t lo = i == 0 ? first : 0;
    const std::size_t hi = i == 0 ? last : lat.ranks[i].size();
    for (std::size_t k = lo; k < hi; ++k) {
      const Rational& h = lat.load[i][k];
      bool fits = true;
      for (std::size_t j : lat.resources_of[i]) {
        if (t < used[j] + h) {
          fits = false;
          break;
        }
      }
      if (!fits) break;
      for (std::size_t j : lat.resources_of[i]) used[j] += h;
      current[i] = lat.ranks[i][k];
      step(i + 1);
      for (std::size_t j : lat.resources_of[i]) used[j] -= h;
    }
  };
  step(0);
}

// Splits the leading coordinate into contiguous chunks, one task each; results
// come back in chunk order so the merged output matches a sequential walk.
template <typename Partial, typename MakeVisitor>
std::vector<Partial> enumerate_chunks(const RankedLattice& lat, const Rational& t, MakeVisitor make) {
  const std::size_t lead = lat.ranks.front().size();
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, lead);
  const std::size_t chunk = (lead + workers - 1) / workers;
  std::vector<std::future<Partial>> jobs;
  for (std::size_t begin = 0; begin < lead; begin += chunk) {
    const std::size_t end = std::min(lead, begin + chunk);
    jobs.push_back(std::async(std::launch::async, [&, begin, end] {
      Partial part;
      enumerate(lat, t, begin, end, make(part));
      return part;
    }));
  }
  std::vector<Partial> out;
  for (auto& job : jobs) out.push_back(job.get());
  return out;
}

void check_args(const ProblemInstance& inst, const Rational& t, const GridSpec& grid) {
  if (t.sign() < 0) throw InputError("oracle needs t >= 0, got " + t.str());
  if (grid.step.sign() <= 0) throw InputError("grid step must be positive");
  (void)inst;
}

}  // namespace

std::vector<RVector> coordinate_lattices(const ProblemInstance& inst, const Rational& t,
                                         const GridSpec& grid) {
  check_args(inst, t, grid);
  const RVector zero_ends = inst.zero_ends();
  const Rational lower = grid.lower ? *grid.lower : *std::min_element(zero_ends.begin(), zero_ends.end());
  RVector base;
  for (Rational x = lower; x <= t; x += grid.step) {
    base.push_back(x);
    if (base.size() > grid.cap) throw LatticeTooLarge(static_cast<double>(base.size()), grid.cap);
  }
  std::vector<RVector> out;
  for (std::size_t i = 0; i < inst.route_count(); ++i) {
    // Values with h_i above t overflow every resource through route i alone.
    const Rational limit = std::min(t, inst.h(i).right_inverse(t));
    RVector l = base;
    l.push_back(zero_ends[i]);
    l.push_back(t);
    std::erase_if(l, [&](const Rational& x) { return limit < x; });
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    out.push_back(std::move(l));
  }
  return out;
}

double lattice_size_estimate(const ProblemInstance& inst, const Rational& t, const GridSpec& grid) {
  check_args(inst, t, grid);
  const RVector zero_ends = inst.zero_ends();
  const Rational lower = grid.lower ? *grid.lower : *std::min_element(zero_ends.begin(), zero_ends.end());
  // Counted arithmetically so that a huge lattice is refused without building it.
  double total = 1;
  for (std::size_t i = 0; i < inst.route_count(); ++i) {
    const Rational limit = std::min(t, inst.h(i).right_inverse(t));
    double count = 2;  // x*_i and t, at most
    if (lower <= limit) count += std::floor(((limit - lower) / grid.step).to_double()) + 1;
    total *= count;
  }
  if (total <= static_cast<double>(grid.cap)) {
    total = 1;
    for (const RVector& l : coordinate_lattices(inst, t, grid)) total *= static_cast<double>(l.size());
  }
  return total;
}

DominanceResult dominance_check(const ProblemInstance& inst, const Rational& t, const GridSpec& grid,
                                const RVector& F) {
  if (F.size() != inst.route_count()) {
    throw InputError("vector has length " + std::to_string(F.size()) + ", instance has " +
                     std::to_string(inst.route_count()) + " routes");
  }
  const RankedLattice lat = build_lattice(inst, t, grid, F);
  std::vector<Rank> f;
  for (const Rational& x : F) f.push_back(rank_of(lat.values, x));
  const Rank f_min = *std::min_element(f.begin(), f.end());
  const std::span<const Rank> f_span(f);

  struct Partial {
    std::uint64_t feasible = 0;
    std::optional<std::vector<Rank>> bad;
  };
  auto parts = enumerate_chunks<Partial>(lat, t, [&](Partial& part) {
    return [&part, f_min, f_span](std::span<const Rank> g) {
      ++part.feasible;
      if (part.bad) return;
      if (*std::min_element(g.begin(), g.end()) < f_min) return;  // g ⪕ F on the minimum alone
      if (!min_sensitive_leq(g, f_span)) part.bad = std::vector<Rank>(g.begin(), g.end());
    };
  });

  DominanceResult out;
  out.lattice_size = lat.size;
  for (const Partial& part : parts) {
    out.feasible_count += part.feasible;
    if (part.bad && !out.counterexample) {
      out.dominated = false;
      RVector g;
      for (Rank r : *part.bad) g.push_back(lat.values[r]);
      out.relation = compare(std::span<const Rank>(*part.bad), f_span);
      out.counterexample = std::move(g);
    }
  }
  return out;
}

RVector nested_maxmin_grid(const ProblemInstance& inst, const Rational& t, const GridSpec& grid) {
  const std::vector<RVector> lattices = coordinate_lattices(inst, t, grid);
  const std::size_t n = inst.route_count();

  RVector levels;
  for (const RVector& l : lattices) levels.insert(levels.end(), l.begin(), l.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  if (levels.size() > grid.cap) throw LatticeTooLarge(static_cast<double>(levels.size()), grid.cap);

  auto feasible = [&](const RVector& v) {
    for (const IndexSet& g : inst.resources()) {
      Rational used;
      for (std::size_t i : g) used += inst.h(i).eval(v[i]);
      if (t < used) return false;
    }
    return true;
  };

  std::vector<std::optional<Rational>> frozen(n);
  std::size_t remaining = n;
  while (remaining > 0) {
    // Lowest-load vector whose free coordinates are all >= m: each free
    // coordinate sits at its smallest lattice value >= m. Any feasible vector
    // with free minimum >= m dominates it coordinatewise, so it is feasible
    // exactly when such a vector exists.
    auto floor_vector = [&](const Rational& m) -> std::optional<RVector> {
      RVector v(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (frozen[i]) {
          v[i] = *frozen[i];
          continue;
        }
        auto it = std::lower_bound(lattices[i].begin(), lattices[i].end(), m);
        if (it == lattices[i].end()) return std::nullopt;
        v[i] = *it;
      }
      return v;
    };
    auto reachable = [&](const Rational& m) {
      const auto v = floor_vector(m);
      return v && feasible(*v);
    };

    // Largest level m with the free minimum >= m attainable; the lowest level
    // always is, since lowering free coordinates never breaks feasibility.
    std::size_t lo = 0;
    std::size_t hi = levels.size() - 1;
    if (!reachable(levels[lo])) throw InvariantViolation("oracle: no feasible lattice vector");
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo + 1) / 2;
      if (reachable(levels[mid])) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    const Rational& level = levels[lo];
    const RVector base = *floor_vector(level);

    // Raise the common level one notch: every coordinate sitting at the level
    // moves to the next level, evaluated on h directly even when its own
    // lattice stops short. The coordinates in resources that overflow are
    // frozen. Should nothing overflow (the next level is off some lattices),
    // use each coordinate's own next lattice value instead.
    std::vector<std::size_t> at_level;
    for (std::size_t i = 0; i < n; ++i) {
      if (!frozen[i] && base[i] == level) at_level.push_back(i);
    }
    auto overflowing = [&](const RVector& lifted) {
      std::vector<bool> blocked(n, false);
      for (const IndexSet& g : inst.resources()) {
        Rational used;
        for (std::size_t i : g) used += inst.h(i).eval(lifted[i]);
        if (!(t < used)) continue;
        for (std::size_t i : g) blocked[i] = true;
      }
      std::vector<std::size_t> out;
      for (std::size_t i : at_level) {
        if (blocked[i]) out.push_back(i);
      }
      return out;
    };
    std::vector<std::size_t> pinned;
    if (lo + 1 < levels.size()) {
      RVector lifted = base;
      for (std::size_t i : at_level) lifted[i] = levels[lo + 1];
      pinned = overflowing(lifted);
      if (pinned.empty()) {
        for (std::size_t i : at_level) {
          auto next = std::upper_bound(lattices[i].begin(), lattices[i].end(), level);
          if (next != lattices[i].end()) lifted[i] = *next;
        }
        pinned = overflowing(lifted);
      }
    }
    if (pinned.empty()) pinned = at_level;
    if (pinned.empty()) throw InvariantViolation("oracle: no coordinate attains the max-min level");
    // A frozen coordinate moves up to its last lattice value with the same
    // load; no constraint sees the difference.
    for (std::size_t i : pinned) {
      const Rational load = inst.h(i).eval(level);
      auto it = std::lower_bound(lattices[i].begin(), lattices[i].end(), level);
      while (std::next(it) != lattices[i].end() && inst.h(i).eval(*std::next(it)) == load) ++it;
      frozen[i] = *it;
      --remaining;
    }
  }

  RVector out;
  out.reserve(n);
  for (auto& v : frozen) out.push_back(std::move(*v));
  return out;
}

}  // namespace frontier
