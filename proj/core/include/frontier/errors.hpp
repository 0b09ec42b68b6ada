#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace frontier {

/// Malformed input or a violated precondition supplied by the caller.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal invariant failed. Reaching this is a bug, never a user error.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A linear-case plan was asked for a time at or beyond its validity horizon.
class OutOfValidity : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A caller-supplied ordered partition does not describe the stage structure at t.
class PartitionInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Brute-force enumeration refused because the lattice is larger than the cap.
class LatticeTooLarge : public std::runtime_error {
 public:
  LatticeTooLarge(double estimate, std::uint64_t cap)
      : std::runtime_error("lattice size " + std::to_string(estimate) +
                           " exceeds cap " + std::to_string(cap)),
        estimate_(estimate),
        cap_(cap) {}

  double estimate() const noexcept { return estimate_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  double estimate_;
  std::uint64_t cap_;
};

}  // namespace frontier
