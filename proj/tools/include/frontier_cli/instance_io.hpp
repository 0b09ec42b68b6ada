#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "frontier/instance.hpp"

namespace frontier::cli {

/// Instance file contents: topology, constraint functions and the time offset,
/// plus the same problem re-anchored so that the offset is zero.
struct LoadedInstance {
  OffsetProblem problem;
  ProblemInstance shifted;  // h(y + t0), capacity t - t0
};

/// Exact rational from a JSON string ("p/q" or decimal) or integer. Floating
/// point JSON numbers are rejected because they are already rounded.
Rational rational_from_json(const nlohmann::ordered_json& v, const std::string& what);

LoadedInstance parse_instance(const nlohmann::ordered_json& doc);
LoadedInstance load_instance(const std::string& path);

nlohmann::ordered_json instance_to_json(const OffsetProblem& problem);

}  // namespace frontier::cli
