// Copyright 2026 The arbac-reach Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdio>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "arbac/cli/cli.hpp"
#include "arbac/policy/dsl.hpp"
#include "test_util.hpp"

namespace arbac {
namespace {

using json = nlohmann::json;
using testing::policy_path;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json report(std::vector<std::string> args) {
  Outcome o = invoke(std::move(args));
  EXPECT_EQ(o.code, cli::kOk) << o.err;
  return json::parse(o.out);
}

std::string temp_path(const std::string& stem) {
  return (std::filesystem::temp_directory_path() / ("arbac_cli_" + stem)).string();
}

TEST(Cli, AnalyzeOneUserIsUnreachable) {
  json j = report({"analyze", policy_path("one_user.arbac"), "--no-timing"});
  EXPECT_EQ(j["verdict"], "unreachable");
  EXPECT_TRUE(j["trace"].is_null());
  std::vector<std::string> fix = j["fixpoint"];
  EXPECT_NE(std::find(fix.begin(), fix.end(), "(and (ua eu er5))"), fix.end());
}

TEST(Cli, ShippedPoliciesReproduceRecordedVerdicts) {
  const std::vector<std::pair<std::string, std::string>> recorded = {
      {"one_user.arbac", "unreachable"},
      {"staff.arbac", "unreachable"},
      {"trusted_assign.arbac", "unreachable"},
  };
  for (const auto& [file, verdict] : recorded) {
    for (std::string mode : {"per-transition", "monolithic"}) {
      json j = report({"analyze", policy_path(file), "--mode", mode});
      EXPECT_EQ(j["verdict"], verdict) << file << " " << mode;
    }
    json o = report({"oracle", policy_path(file)});
    EXPECT_EQ(o["verdict"], verdict) << file;
  }
}

TEST(Cli, StaffVerdictMatchesOracleForVariedGoals) {
  std::string base = testing::read_file(policy_path("staff.arbac"));
  base = base.substr(0, base.rfind("goal"));
  const std::vector<std::string> goals = {
      "goal (user Alice) (pair (>= FullTime) Access)",
      "goal (user Alice) (pair FullTime)",
      "goal (user Bob) (pair PartTime)",
      "goal (user Carol) (pair FullTime)",
      "goal (user Alice) (pair ProjectLead)",
  };
  std::string untrusted = base;
  for (size_t at; (at = untrusted.find(" (trusted Carol)")) != std::string::npos;)
    untrusted.erase(at, 16);
  int reachable = 0;
  for (const std::string& b : {base, untrusted})
    for (size_t i = 0; i < goals.size(); ++i) {
      std::string path = temp_path("ex1_" + std::to_string(i) + ".arbac");
      std::ofstream(path) << b << goals[i] << "\n";
      json a = report({"analyze", path});
      json o = report({"oracle", path});
      EXPECT_EQ(a["verdict"], o["verdict"]) << goals[i];
      if (o["verdict"] == "reachable") {
        ++reachable;
        EXPECT_EQ(a["trace"].size(), o["run"].size()) << goals[i];
      }
      std::remove(path.c_str());
    }
  EXPECT_GT(reachable, 0);
}

TEST(Cli, GenIsDeterministicAndParses) {
  std::string a = temp_path("gen_a.arbac"), b = temp_path("gen_b.arbac");
  for (const auto& p : {a, b})
    ASSERT_EQ(invoke({"gen", "--seed", "42", "--roles", "8", "--goal-size", "1", "-o", p}).code,
              cli::kOk);
  EXPECT_EQ(testing::read_file(a), testing::read_file(b));
  EXPECT_EQ(invoke({"gen", "--seed", "42"}).out, invoke({"gen", "--seed", "42"}).out);
  EXPECT_NE(invoke({"gen", "--seed", "42"}).out, invoke({"gen", "--seed", "43"}).out);
  json j = report({"analyze", a});
  EXPECT_NE(j["verdict"], "inconclusive");
  PolicyDecls d = load_policy_file(a);
  EXPECT_EQ(serialize_policy(parse_policy(serialize_policy(d))), serialize_policy(d));
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({}).code, cli::kUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"analyze"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"analyze", policy_path("one_user.arbac"), "--mode", "sideways"}).code,
            cli::kUsage);
  EXPECT_EQ(invoke({"--help"}).code, cli::kOk);
  EXPECT_EQ(invoke({"analyze", "/nonexistent/policy.arbac"}).code, cli::kInput);
  EXPECT_EQ(invoke({"contain", policy_path("one_user.arbac"), "--r1", "nope", "--r2", "er1"}).code,
            cli::kInput);
  EXPECT_EQ(invoke({"contain", policy_path("staff.arbac"), "--r1", "Engineer", "--r2",
                    "Employee"})
                .code,
            cli::kInput);

  std::string bad = temp_path("bad.arbac");
  std::ofstream(bad) << "sort User sv A\nsort Role sv R\ncan_assign (target Q)\n";
  Outcome o = invoke({"analyze", bad});
  EXPECT_EQ(o.code, cli::kInput);
  EXPECT_FALSE(o.err.empty());
  std::remove(bad.c_str());

  o = invoke({"analyze", policy_path("one_user.arbac"), "--max-iterations", "1"});
  EXPECT_EQ(o.code, cli::kBudget);
  EXPECT_EQ(json::parse(o.out)["verdict"], "inconclusive");
  EXPECT_EQ(invoke({"oracle", policy_path("one_user.arbac"), "--max-states", "1"}).code,
            cli::kBudget);
}

TEST(Cli, ReportsAreDeterministicWithoutTiming) {
  std::vector<std::string> args = {"analyze", policy_path("staff.arbac"), "--no-timing"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST(Cli, AnalysesSubcommands) {
  json b = report({"bounded", policy_path("one_user.arbac"), "--bound", "2", "--upto"});
  EXPECT_EQ(b["verdict"], "unsat");
  EXPECT_EQ(b["bounds"].size(), 3u);

  json inv = report({"invariant", policy_path("one_user.arbac"), "--psi",
                     "(forall ((u User)) (not (ua u er8)))"});
  EXPECT_FALSE(inv["holds"].get<bool>());
  EXPECT_EQ(inv["failure"], "step");

  json c = report({"contain", policy_path("one_user.arbac"), "--r1", "er1", "--r2", "er2"});
  EXPECT_FALSE(c["holds"].get<bool>());
  EXPECT_FALSE(c["witness"].is_null());

  json w = report({"wp", policy_path("one_user.arbac"), "--user", "eu"});
  EXPECT_EQ(w["search"], "unreachable");
  EXPECT_FALSE(w["minimal_sets"].empty());
}

TEST(Cli, BenchWritesCsvRows) {
  std::string csv = temp_path("bench.csv");
  json j = report({"bench", "--goal-sizes", "1,2", "--instances", "3", "--roles", "5", "--users",
                   "2", "--jobs", "2", "--csv", csv});
  EXPECT_EQ(j["rows"], 6);
  std::ifstream f(csv);
  std::string line;
  int n = 0;
  std::getline(f, line);
  EXPECT_EQ(line, "instance,goal_size,seed,verdict,iterations,cubes,solver_calls,wall_ms");
  while (std::getline(f, line)) ++n;
  EXPECT_EQ(n, 6);
  std::remove(csv.c_str());
}

}  // namespace
}  // namespace arbac
