#pragma once

// The min-sensitive partial order on real vectors.
//
// a ⪕ b holds when a = b, or min a < min b, or the minima tie and b attains
// its minimum on a strict subset of the indices where a attains it, or the
// argmin sets coincide (and are not everything) and the entries outside the
// common argmin compare the same way recursively. In dimension one it is ≤.

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "frontier/errors.hpp"
#include "frontier/rational.hpp"

namespace frontier {

using RVector = std::vector<Rational>;
using IndexSet = std::vector<std::size_t>;  // sorted, 0-based

enum class Relation { Equal, Less, Greater, Incomparable };

const char* to_string(Relation r);

/// Indices attaining the minimum, in increasing order. Requires a nonempty input.
template <typename T>
IndexSet argmin_set(std::span<const T> a) {
  if (a.empty()) throw InputError("argmin of an empty vector");
  const T& lowest = *std::min_element(a.begin(), a.end());
  IndexSet out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == lowest) out.push_back(i);
  }
  return out;
}

// Works for any totally ordered value type; only comparisons are used, so the
// relation is invariant under strictly increasing relabelling of values.
template <typename T>
bool min_sensitive_leq(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) {
    throw InputError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
  }
  if (a.empty()) throw InputError("min-sensitive order needs dimension >= 1");

  std::vector<T> x(a.begin(), a.end());
  std::vector<T> y(b.begin(), b.end());
  while (true) {
    if (x.size() == 1) return x[0] <= y[0];
    if (x == y) return true;
    const T& min_x = *std::min_element(x.begin(), x.end());
    const T& min_y = *std::min_element(y.begin(), y.end());
    if (min_x < min_y) return true;
    if (min_y < min_x) return false;

    const IndexSet arg_x = argmin_set(std::span<const T>(x));
    const IndexSet arg_y = argmin_set(std::span<const T>(y));
    if (arg_y.size() < arg_x.size() &&
        std::includes(arg_x.begin(), arg_x.end(), arg_y.begin(), arg_y.end())) {
      return true;
    }
    if (arg_x != arg_y || arg_x.size() == x.size()) return false;

    // Recurse on the surviving indices, preserving their relative order.
    std::vector<T> rx;
    std::vector<T> ry;
    rx.reserve(x.size() - arg_x.size());
    ry.reserve(x.size() - arg_x.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (next < arg_x.size() && arg_x[next] == i) {
        ++next;
        continue;
      }
      rx.push_back(std::move(x[i]));
      ry.push_back(std::move(y[i]));
    }
    x = std::move(rx);
    y = std::move(ry);
  }
}

template <typename T>
Relation compare(std::span<const T> a, std::span<const T> b) {
  const bool ab = min_sensitive_leq(a, b);
  const bool ba = min_sensitive_leq(b, a);
  if (ab && ba) return Relation::Equal;
  if (ab) return Relation::Less;
  if (ba) return Relation::Greater;
  return Relation::Incomparable;
}

inline bool min_sensitive_leq(const RVector& a, const RVector& b) {
  return min_sensitive_leq(std::span<const Rational>(a), std::span<const Rational>(b));
}

inline Relation compare(const RVector& a, const RVector& b) {
  return compare(std::span<const Rational>(a), std::span<const Rational>(b));
}

inline IndexSet argmin_set(const RVector& a) { return argmin_set(std::span<const Rational>(a)); }

}  // namespace frontier
