#include <gtest/gtest.h>

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "frontier_cli/app.hpp"

namespace frontier::cli {
namespace {

using json = nlohmann::json;

std::string data(const std::string& name) { return std::string(FRONTIER_TEST_DATA_DIR) + "/" + name; }

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream cs(line);
    std::string cell;
    while (std::getline(cs, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

TEST(Cli, Solve) {
  const Result r = call({"solve", data("two_resource.json"), "--t", "2"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["schema_version"], 1);
  EXPECT_EQ(doc["F"], json({"-1/2", "-1/2", "1/10"}));
  EXPECT_EQ(doc["k_max"], 2);
  EXPECT_EQ(doc["stages"][0]["J"], json({1}));

  const Result f = call({"--float", "solve", data("two_resource.json"), "--t", "2"});
  ASSERT_EQ(f.code, kOk);
  EXPECT_DOUBLE_EQ(json::parse(f.out)["F"][2].get<double>(), 0.1);

  EXPECT_EQ(call({"solve", data("two_resource.json"), "--t", "-1"}).code, kInputError);
  EXPECT_EQ(call({"solve", data("two_resource.json"), "--t", "abc"}).code, kInputError);
  EXPECT_EQ(call({"solve", data("missing.json"), "--t", "1"}).code, kInputError);
  EXPECT_EQ(call({"solve", data("empty_resource.json"), "--t", "1"}).code, kInputError);
}

TEST(Cli, OffsetInstance) {
  const Result r = call({"solve", data("two_resource_offset.json"), "--t", "3"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(json::parse(r.out)["F"], json({"1/2", "1/2", "11/10"}));
  EXPECT_EQ(call({"solve", data("two_resource_offset.json"), "--t", "1/2"}).code, kInputError);
}

TEST(Cli, Trajectory) {
  const Result two = call({"trajectory", data("two_resource.json"), "--t-start", "0", "--t-end", "6", "--steps", "1"});
  ASSERT_EQ(two.code, kOk) << two.err;
  const auto rows = csv_rows(two.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"t", "F_1", "F_2", "F_3", "partition_id"}));
  EXPECT_EQ(rows[1][0], "0");
  EXPECT_EQ(rows[2][0], "6");

  const Result fine =
      call({"trajectory", data("two_resource.json"), "--t-end", "6", "--steps", "12", "--extra", "7/2"});
  ASSERT_EQ(fine.code, kOk) << fine.err;
  std::set<std::string> ids;
  for (const auto& row : csv_rows(fine.out)) ids.insert(row.back());
  ids.erase("partition_id");
  EXPECT_EQ(ids.size(), 4u);

  const Result seven = call({"trajectory", data("seven_route.json"), "--t-list", "3,4,5,6,7,8"});
  ASSERT_EQ(seven.code, kOk) << seven.err;
  const auto srows = csv_rows(seven.out);
  ASSERT_EQ(srows.size(), 7u);
  for (std::size_t k = 1; k < srows.size(); ++k) {
    EXPECT_EQ(srows[k][5], std::vector<std::string>({"1", "4/5", "3/5", "2/5", "1/5", "0"})[k - 1]);
  }

  EXPECT_EQ(call({"trajectory", data("two_resource.json"), "--t-end", "6", "--steps", "0"}).code, kInputError);
  EXPECT_EQ(call({"trajectory", data("two_resource.json"), "--t-start", "3", "--t-end", "1"}).code, kInputError);
  EXPECT_EQ(call({"trajectory", data("two_resource.json")}).code, kInputError);
}

TEST(Cli, Analyze) {
  const Result clean = call({"analyze", data("two_resource.json"), "--t-end", "10"});
  EXPECT_EQ(clean.code, kOk) << clean.out << clean.err;

  const Result seven = call({"analyze", data("seven_route.json"), "--t-start", "3", "--t-end", "8", "--steps", "5"});
  ASSERT_EQ(seven.code, kFinding);
  const json doc = json::parse(seven.out);
  EXPECT_EQ(doc["schema_version"], 1);
  ASSERT_FALSE(doc["monotonicity_violations"].empty());
  for (const auto& v : doc["monotonicity_violations"]) EXPECT_EQ(v["coordinate"], 5);
  EXPECT_EQ(doc["reduction_cover"], false);

  const Result jump = call({"analyze", data("jump.json"), "--t-end", "4"});
  ASSERT_EQ(jump.code, kFinding);
  const json jdoc = json::parse(jump.out);
  ASSERT_EQ(jdoc["jump_candidates"].size(), 1u);
  EXPECT_EQ(jdoc["jump_candidates"][0]["jump"], "1");

  EXPECT_EQ(call({"analyze", data("jump.json"), "--t-end", "4", "--gap-threshold", "0"}).code, kInputError);
}

TEST(Cli, Oracle) {
  const Result r = call({"oracle", data("two_resource.json"), "--t", "2", "--step", "1/4"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["dominated"], true);
  EXPECT_EQ(doc["agreement"], true);
  EXPECT_EQ(doc["nested_maxmin"], json({"-1/2", "-1/2", "0"}));

  const Result solved = call({"solve", data("two_resource.json"), "--t", "2"});
  std::string vec;
  for (const auto& x : json::parse(solved.out)["F"]) vec += (vec.empty() ? "" : ",") + x.get<std::string>();
  EXPECT_EQ(call({"oracle", data("two_resource.json"), "--t", "2", "--check-vector", vec}).code, kOk);

  const Result bad = call({"oracle", data("two_resource.json"), "--t", "2", "--check-vector", "-3/2,-1/2,1/10"});
  ASSERT_EQ(bad.code, kFinding);
  EXPECT_EQ(json::parse(bad.out)["relation"], "Greater");

  const Result refused = call({"oracle", data("seven_route.json"), "--t", "5", "--step", "1/10", "--cap", "10"});
  EXPECT_EQ(refused.code, kInputError);
  EXPECT_NE(refused.err.find("lattice"), std::string::npos);
  EXPECT_EQ(call({"oracle", data("two_resource.json"), "--t", "2", "--check-vector", "1,2"}).code, kInputError);
}

TEST(Cli, LinearPlan) {
  const Result r = call({"linear-plan", data("seven_route.json")});
  ASSERT_EQ(r.code, kOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["horizon"], "3");
  EXPECT_EQ(doc["stages"][0]["a"], "3");

  EXPECT_EQ(json::parse(call({"linear-plan", data("single_linear.json")}).out)["horizon"], "inf");
  EXPECT_EQ(call({"linear-plan", data("five_route.json")}).code, kInputError);
  EXPECT_EQ(call({"linear-plan", data("five_route.json"), "--germ"}).code, kOk);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({"--help"}).code, kOk);
  EXPECT_EQ(call({}).code, kInputError);
  EXPECT_EQ(call({"solve", data("two_resource.json"), "--t", "1", "--bogus"}).code, kInputError);
  EXPECT_EQ(call({"frobnicate"}).code, kInputError);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::vector<std::string>> commands = {
      {"trajectory", data("seven_route.json"), "--t-end", "8", "--steps", "64", "--breakpoints"},
      {"analyze", data("jump.json"), "--t-end", "4"},
      {"oracle", data("two_resource.json"), "--t", "1", "--step", "1/8"},
  };
  for (const auto& args : commands) {
    const Result a = call(args);
    const Result b = call(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

}  // namespace
}  // namespace frontier::cli
