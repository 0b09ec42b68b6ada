#include "frontier_cli/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "frontier/errors.hpp"

namespace frontier::cli {

using nlohmann::ordered_json;

namespace {

const ordered_json& field(const ordered_json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + " must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + " is missing \"" + key + "\"");
  return *it;
}

std::size_t positive_index(const ordered_json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<long long>() < 1) throw InputError(what + " must be an integer >= 1");
  return static_cast<std::size_t>(v.get<long long>());
}

PiecewiseLinear parse_h(const ordered_json& node, const std::string& where) {
  const std::string type = field(node, "type", where).get<std::string>();
  if (type == "linear") {
    return PiecewiseLinear::linear(rational_from_json(field(node, "rho", where), where + ".rho"),
                                   rational_from_json(field(node, "x_star", where), where + ".x_star"));
  }
  if (type == "pwl") {
    std::vector<Segment> segments;
    const ordered_json& segs = field(node, "segments", where);
    if (!segs.is_array()) throw InputError(where + ".segments must be an array");
    for (std::size_t k = 0; k < segs.size(); ++k) {
      const std::string at = where + ".segments[" + std::to_string(k) + "]";
      if (!segs[k].is_array() || segs[k].size() != 2) throw InputError(at + " must be a pair [x, slope]");
      segments.push_back({rational_from_json(segs[k][0], at), rational_from_json(segs[k][1], at)});
    }
    return PiecewiseLinear(rational_from_json(field(node, "anchor", where), where + ".anchor"),
                           std::move(segments),
                           rational_from_json(field(node, "final_slope", where), where + ".final_slope"));
  }
  throw InputError(where + ": unknown type \"" + type + "\" (expected \"linear\" or \"pwl\")");
}

}  // namespace

Rational rational_from_json(const ordered_json& v, const std::string& what) {
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const InputError& e) {
      throw InputError(what + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw InputError(what + " must be a rational string such as \"3/4\" or an integer");
}

LoadedInstance parse_instance(const ordered_json& doc) {
  const std::size_t routes = positive_index(field(doc, "routes", "instance"), "routes");

  const ordered_json& res = field(doc, "resources", "instance");
  if (!res.is_array() || res.empty()) throw InputError("resources must be a nonempty array");
  std::map<std::size_t, IndexSet> by_id;
  for (std::size_t k = 0; k < res.size(); ++k) {
    const std::string where = "resources[" + std::to_string(k) + "]";
    const std::size_t id = positive_index(field(res[k], "id", where), where + ".id");
    const ordered_json& members = field(res[k], "routes", where);
    if (!members.is_array()) throw InputError(where + ".routes must be an array");
    IndexSet g;
    for (const auto& m : members) g.push_back(positive_index(m, where + ".routes entry") - 1);
    std::sort(g.begin(), g.end());
    if (std::adjacent_find(g.begin(), g.end()) != g.end()) {
      throw InputError("resource " + std::to_string(id) + " lists a route twice");
    }
    if (!by_id.emplace(id, std::move(g)).second) throw InputError("duplicate resource id " + std::to_string(id));
  }
  std::vector<IndexSet> resources;
  for (auto& [id, g] : by_id) {
    if (id != resources.size() + 1) {
      throw InputError("resource ids must be 1.." + std::to_string(by_id.size()) + " (missing " +
                       std::to_string(resources.size() + 1) + ")");
    }
    resources.push_back(std::move(g));
  }

  const ordered_json& hs = field(doc, "h", "instance");
  if (!hs.is_array() || hs.size() != routes) {
    throw InputError("h must be an array with one entry per route (" + std::to_string(routes) + ")");
  }
  std::vector<PiecewiseLinear> h;
  for (std::size_t i = 0; i < hs.size(); ++i) h.push_back(parse_h(hs[i], "h[" + std::to_string(i + 1) + "]"));

  Rational t0;
  if (auto it = doc.find("t0"); it != doc.end()) t0 = rational_from_json(*it, "t0");

  OffsetProblem problem{std::move(resources), std::move(h), t0};
  validate_topology(problem.resources, routes);
  std::vector<PiecewiseLinear> shifted_h;
  for (std::size_t i = 0; i < problem.h.size(); ++i) {
    if (t0 < problem.h[i].zero_end()) {
      throw InputError("route " + std::to_string(i + 1) + ": zero end x* = " + problem.h[i].zero_end().str() +
                       " must be <= t0 = " + t0.str());
    }
    shifted_h.push_back(problem.h[i].shifted(t0));
  }
  ProblemInstance shifted(problem.resources, std::move(shifted_h));
  return {std::move(problem), std::move(shifted)};
}

LoadedInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file " + path);
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return parse_instance(doc);
}

ordered_json instance_to_json(const OffsetProblem& problem) {
  ordered_json doc;
  doc["routes"] = problem.h.size();
  doc["resources"] = ordered_json::array();
  for (std::size_t j = 0; j < problem.resources.size(); ++j) {
    ordered_json members = ordered_json::array();
    for (std::size_t i : problem.resources[j]) members.push_back(i + 1);
    doc["resources"].push_back({{"id", j + 1}, {"routes", members}});
  }
  doc["h"] = ordered_json::array();
  for (const PiecewiseLinear& f : problem.h) {
    if (f.is_linear()) {
      doc["h"].push_back({{"type", "linear"}, {"rho", f.final_slope().str()}, {"x_star", f.zero_end().str()}});
      continue;
    }
    ordered_json segs = ordered_json::array();
    for (const Segment& s : f.segments()) segs.push_back({s.end.str(), s.slope.str()});
    doc["h"].push_back({{"type", "pwl"},
                        {"anchor", f.zero_end().str()},
                        {"segments", segs},
                        {"final_slope", f.final_slope().str()}});
  }
  if (!problem.t0.is_zero()) doc["t0"] = problem.t0.str();
  return doc;
}

}  // namespace frontier::cli
