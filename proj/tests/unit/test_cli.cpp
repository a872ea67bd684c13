#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, log;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "bgeom");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, log;
  const int code = bgeom::cli::run(static_cast<int>(argv.size()), argv.data(), out, log);
  return {code, out.str(), log.str()};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, BallMetricGrid) {
  const Result r = invoke({"metric", "--p", "1", "--lambda", "1", "--grid", "5x5"});
  EXPECT_EQ(r.code, 0) << r.log;
  EXPECT_EQ(lines(r.out), 26u);  // header + 25 rows
}

TEST(Cli, InvalidArgumentsExitTwo) {
  const Result r = invoke({"kernel", "--p", "0", "--lambda", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.log.find("InvalidArgument"), std::string::npos) << r.log;
  EXPECT_EQ(invoke({"metric", "--grid", "5by5"}).code, 2);
  EXPECT_EQ(invoke({"nonsense"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
}

TEST(Cli, DeterministicAcrossWorkers) {
  for (const char* fmt : {"csv", "json"}) {
    const Result a = invoke({"curvature", "--p", "0.5", "--lambda", "2", "--grid", "4x4", "--format", fmt});
    const Result b = invoke({"curvature", "--p", "0.5", "--lambda", "2", "--grid", "4x4", "--format", fmt,
                             "--workers", "4"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, JsonLayout) {
  const Result r = invoke({"hsc", "--p", "2", "--lambda", "1", "--grid", "3x3", "--format", "json", "--ke"});
  ASSERT_EQ(r.code, 0) << r.log;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.contains("config"));
  EXPECT_TRUE(j.contains("rows"));
  EXPECT_TRUE(j.contains("summary"));
  EXPECT_EQ(j["rows"].size(), 9u);
  EXPECT_EQ(j["config"]["command"], "hsc");
  EXPECT_EQ(j["summary"]["failures"], 0);
  bool has_ke = false;
  for (const auto& [k, v] : j["summary"].items())
    if (k.find("ke") != std::string::npos) has_ke = true;
  EXPECT_TRUE(has_ke) << j["summary"].dump();
}

TEST(Cli, DiskCommand) {
  const Result r = invoke({"disk", "--p-list", "2,3", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.log;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_GT(j["rows"].size(), 0u);
}
