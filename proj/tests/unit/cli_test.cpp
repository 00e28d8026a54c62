// Copyright 2026 The dynot Authors
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
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"

namespace dynot::cli {
namespace {

using Json = nlohmann::ordered_json;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

std::string data(const std::string& name) { return std::string(DYNOT_TEST_DATA) + "/" + name; }

CliRun run(const std::vector<std::string>& args) {
  std::vector<std::string> storage = {"dynot"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json json_of(const CliRun& r) { return Json::parse(r.out); }

TEST(Cli, DistPointMasses) {
  const CliRun r = run({"dist", data("delta_x.json"), data("delta_y.json")});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(json_of(r)["w_infinity"].get<double>(), 1.0);
}

TEST(Cli, DistExampAtFour) {
  const CliRun r = run({"dist", data("examp_n4.json"), data("delta_y.json"), "--p", "1", "--p", "2", "--plan"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json j = json_of(r);
  EXPECT_EQ(j["w_infinity"].get<double>(), 1.0);
  EXPECT_EQ(j["w1"].get<double>(), 0.25);
  EXPECT_EQ(j["w2"].get<double>(), 0.5);
  ASSERT_EQ(j["plan"].size(), 2u);
  EXPECT_EQ(j["plan"][0]["mass"], "1/4");
}

TEST(Cli, DistSelfIsZero) {
  const CliRun r = run({"dist", data("a.json"), data("a.json"), "--p", "1", "--p", "2"});
  ASSERT_EQ(r.code, kOk);
  const Json j = json_of(r);
  EXPECT_EQ(j["w_infinity"].get<double>(), 0.0);
  EXPECT_EQ(j["w1"].get<double>(), 0.0);
  EXPECT_EQ(j["w2"].get<double>(), 0.0);
}

TEST(Cli, DistFormats) {
  const CliRun table = run({"dist", data("examp_n4.json"), data("delta_y.json"), "--p", "1", "--format", "table"});
  EXPECT_EQ(table.out, "w_infinity\t1\nw1\t0.25\n");
  const CliRun csv = run({"dist", data("examp_n4.json"), data("delta_y.json"), "--p", "1", "--format", "csv"});
  EXPECT_EQ(csv.out, "metric,value\nw_infinity,1\nw1,0.25\n");
}

TEST(Cli, PlanObjectives) {
  const CliRun b = run({"plan", data("a.json"), data("a.json")});
  ASSERT_EQ(b.code, kOk);
  EXPECT_EQ(json_of(b)["objective"], "w_infinity");
  const CliRun w = run({"plan", data("examp_n4.json"), data("delta_y.json"), "--p", "2"});
  ASSERT_EQ(w.code, kOk);
  EXPECT_EQ(json_of(w)["value"].get<double>(), 0.5);
}

TEST(Cli, MalformedInputs) {
  EXPECT_EQ(run({"dist", data("malformed.json"), data("delta_y.json")}).code, kMalformed);
  EXPECT_EQ(run({"dist", data("bad_weight.json"), data("delta_y.json")}).code, kMalformed);
  EXPECT_EQ(run({"dist", data("missing.json"), data("delta_y.json")}).code, kMalformed);
  EXPECT_EQ(run({"dist", data("delta_x.json")}).code, kMalformed);
  EXPECT_EQ(run({"dist", data("delta_x.json"), data("delta_y.json"), "--p", "3"}).code, kMalformed);
  EXPECT_EQ(run({"frobnicate"}).code, kMalformed);
  EXPECT_EQ(run({}).code, kMalformed);
  EXPECT_EQ(run({"stability", data("system_not_fixed.json")}).code, kMalformed);
}

TEST(Cli, HelpMentionsExitCodes) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Exit codes"), std::string::npos);
}

TEST(Cli, SpaceMismatch) {
  const CliRun r = run({"dist", data("delta_x.json"), data("other_space.json")});
  EXPECT_EQ(r.code, kSpaceMismatch);
  EXPECT_NE(r.err.find("SpaceMismatch"), std::string::npos);
}

TEST(Cli, DecomposeSingleSet) {
  const CliRun r = run({"decompose", data("instance_m1.json")});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json j = json_of(r);
  ASSERT_EQ(j["trace"].size(), 1u);
  EXPECT_EQ(j["trace"][0]["label"], "Base");
  EXPECT_EQ(j["components"][0]["weights"].size(), 4u);
  EXPECT_TRUE(j["verification"]["valid"].get<bool>());
}

TEST(Cli, DecomposeThreeSets) {
  const CliRun r = run({"decompose", data("instance_m3.json")});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json j = json_of(r);
  EXPECT_TRUE(j["verification"]["valid"].get<bool>());
  EXPECT_FALSE(j["trace"].empty());
  EXPECT_EQ(j["components"].size(), 3u);
}

TEST(Cli, DecomposeInfeasible) {
  const CliRun r = run({"decompose", data("instance_infeasible.json")});
  ASSERT_EQ(r.code, kInfeasible);
  const Json j = json_of(r);
  EXPECT_FALSE(j["feasible"].get<bool>());
  EXPECT_EQ(j["witness"], Json::array({1}));
}

TEST(Cli, ConvergeVerdicts) {
  EXPECT_EQ(run({"converge", data("seq_constant.json")}).code, kOk);
  EXPECT_EQ(run({"converge", data("seq_drift.json")}).code, kOk);
  const CliRun examp = run({"converge", data("seq_examp.json")});
  ASSERT_EQ(examp.code, kNotDConvergent);
  EXPECT_EQ(json_of(examp)["witness"]["set"], Json::array({"y"}));
  const CliRun lop = run({"converge", data("seq_lopsided.json")});
  ASSERT_EQ(lop.code, kNotDConvergent);
  EXPECT_TRUE(json_of(lop)["criteria"]["w_proxy"]["pass"].get<bool>());
  const CliRun stab = run({"converge", data("seq_stabilizing.json")});
  ASSERT_EQ(stab.code, kOk);
  EXPECT_EQ(json_of(stab)["criteria"]["separating_mass"]["index"], 5);
  EXPECT_EQ(run({"converge", data("seq_inconclusive.json")}).code, kInconclusive);
}

TEST(Cli, CompareColumns) {
  const CliRun r = run({"compare", data("seq_examp.json"), "--format", "json"});
  ASSERT_EQ(r.code, kOk);
  const Json j = json_of(r);
  ASSERT_EQ(j.size(), 10u);
  for (std::size_t n = 0; n < 10; ++n) {
    EXPECT_EQ(j[n]["w_infinity"].get<double>(), 1.0);
    EXPECT_NEAR(j[n]["w1"].get<double>(), 1.0 / static_cast<double>(n + 1), 1e-12);
  }
  const CliRun c = run({"compare", data("seq_constant.json"), "--format", "csv"});
  EXPECT_EQ(c.out, "n,w1,w2,w_infinity,support_hausdorff\n0,0,0,0,0\n1,0,0,0,0\n2,0,0,0,0\n3,0,0,0,0\n");
  const CliRun d = run({"compare", data("seq_drift.json"), "--format", "json"});
  const Json dj = json_of(d);
  EXPECT_LT(dj.back()["w_infinity"].get<double>(), dj.front()["w_infinity"].get<double>());
}

TEST(Cli, StabilityScenarios) {
  const CliRun sink = run({"stability", "sink_source", "--measure", "sink"});
  ASSERT_EQ(sink.code, kUnstable) << sink.err;
  EXPECT_EQ(json_of(sink)["witness"]["distance"].get<double>(), 1.0);
  const CliRun lam = run({"stability", "torus", "--measure", "lambda"});
  EXPECT_EQ(lam.code, kOk) << lam.err;
  EXPECT_EQ(run({"stability", "torus", "--measure", "nu"}).code, kUnstable);
  EXPECT_EQ(run({"stability", "system_identity.json"}).code, kMalformed);
  EXPECT_EQ(run({"stability", data("system_identity.json")}).code, kOk);
}

TEST(Cli, StabilityNotions) {
  EXPECT_EQ(run({"stability", "sink_source", "--notion", "attractor", "--eps", "0.5"}).code, kOk);
  EXPECT_EQ(run({"stability", "sink_source", "--notion", "attractor", "--set", "y", "--eps", "0.5"}).code, kUnstable);
  EXPECT_EQ(run({"stability", "sink_source", "--notion", "asymptotic", "--eps", "1"}).code, kUnstable);
  EXPECT_EQ(run({"stability", "sink_source", "--notion", "asymptotic", "--eps", "0.9"}).code, kOk);
  EXPECT_EQ(run({"stability", data("system_contraction.json"), "--notion", "exponential", "--delta", "3"}).code, kOk);
  EXPECT_EQ(run({"stability", "torus", "--grid", "8", "--notion", "exponential", "--delta", "0.125"}).code,
            kUnstable);
  EXPECT_EQ(run({"stability", data("system_identity.json"), "--set", "u", "v"}).code, kInconclusive);
}

TEST(Cli, StabilityTraceCsv) {
  const CliRun r = run({"stability", "sink_source", "--measure", "sink", "--horizon", "2", "--format", "csv"});
  EXPECT_EQ(r.out, "n,probe,distance\n0,mu:1/8,1\n1,mu:1/8,1\n2,mu:1/8,1\n0,mu:1/4,1\n1,mu:1/4,1\n2,mu:1/4,1\n");
}

TEST(Cli, OutputAndMatrixFiles) {
  const std::string out_path = ::testing::TempDir() + "dynot_out.json";
  const std::string csv_path = ::testing::TempDir() + "dynot_matrix.csv";
  const CliRun r = run({"dist", data("delta_x.json"), data("delta_y.json"), "--output", out_path, "--export-matrix",
                     csv_path});
  ASSERT_EQ(r.code, kOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(out_path), m(csv_path);
  std::stringstream fs, ms;
  fs << f.rdbuf();
  ms << m.rdbuf();
  EXPECT_EQ(Json::parse(fs.str())["w_infinity"].get<double>(), 1.0);
  EXPECT_EQ(ms.str().substr(0, 7), "id,x,y\n");
  std::remove(out_path.c_str());
  std::remove(csv_path.c_str());
}

TEST(Cli, SameSeedSameBytes) {
  const std::vector<std::vector<std::string>> commands = {
      {"stability", "torus", "--grid", "8", "--measure", "lambda", "--probes", "all", "--seed", "5"},
      {"stability", data("system_identity.json"), "--seed", "7"},
      {"converge", data("seq_stabilizing.json")},
  };
  for (const auto& c : commands) {
    const CliRun a = run(c);
    const CliRun b = run(c);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
  const CliRun s1 = run({"stability", data("system_identity.json"), "--seed", "1"});
  const CliRun s2 = run({"stability", data("system_identity.json"), "--seed", "2"});
  EXPECT_NE(s1.out, s2.out);
}

}  // namespace
}  // namespace dynot::cli
