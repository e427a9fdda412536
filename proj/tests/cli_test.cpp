// Copyright 2026 The DTT Scheduler Authors
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

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "fixtures.hpp"

namespace dtt {
namespace {

namespace fs = std::filesystem;
using testing::fixture_path;
using testing::run_cli;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ("dtt_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    auto p = (dir_ / name).string();
    std::ofstream(p) << text;
    return p;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string quad_pe_args() {
    return " --hardware " + fixture_path("quad_pe_hardware.json") + " --workload " +
           fixture_path("quad_pe_workload.json") + " --seeds " + fixture_path("quad_pe_seeds.json");
  }

  // Quad-PE hardware with a distribution latency too short to feed any PE.
  std::string rushed_hardware() {
    auto j = nlohmann::json::parse(testing::read_fixture("quad_pe_hardware.json"));
    for (auto& a : j["actors"]) a["distribution_latency"] = 2;
    return file("rushed.json", j.dump());
  }

  fs::path dir_;
};

TEST_F(Cli, ScheduleCsvIsGolden) {
  auto r = run_cli("schedule" + quad_pe_args());
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, testing::read_fixture("quad_pe_movements_golden.csv"));
}

TEST_F(Cli, ScheduleTextAndOutDir) {
  auto r = run_cli("schedule" + quad_pe_args() + " --format text --out-dir " + path("out"));
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("makespan"), std::string::npos);
  for (const char* f : {"schedule.json", "movements.csv", "placements.csv", "placements.json",
                        "stats.json", "gantt.txt"}) {
    EXPECT_TRUE(fs::exists(dir_ / "out" / f)) << f;
  }
}

TEST_F(Cli, EmptyWorkload) {
  auto w = file("empty.json", "[]");
  auto r = run_cli("schedule --hardware " + fixture_path("quad_pe_hardware.json") + " --workload " + w);
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "datum,source_node,start_cycle,end_node,end_cycle\n");
}

TEST_F(Cli, TimingFaultExitsOne) {
  auto r = run_cli("schedule --hardware " + rushed_hardware() + " --workload " +
                   fixture_path("quad_pe_workload.json") + " --seeds " + fixture_path("quad_pe_seeds.json"));
  EXPECT_EQ(r.status, 1);
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli("").status, 2);
  EXPECT_EQ(run_cli("schedule --workload " + fixture_path("quad_pe_workload.json")).status, 2);
  EXPECT_EQ(run_cli("schedule --hardware /nonexistent.json --workload " +
                    fixture_path("quad_pe_workload.json"))
                .status,
            2);
  auto bad = file("bad.json", "{\"nodes\": [");
  EXPECT_EQ(run_cli("schedule --hardware " + bad + " --workload " + fixture_path("quad_pe_workload.json"))
                .status,
            2);
  auto invalid = file("invalid.json", R"({"nodes": [], "wires": []})");
  EXPECT_EQ(run_cli("schedule --hardware " + invalid + " --workload " +
                    fixture_path("quad_pe_workload.json"))
                .status,
            2);
  EXPECT_EQ(run_cli("schedule" + quad_pe_args() + " --format xml").status, 2);
}

TEST_F(Cli, VerifyGoldenAndLatency) {
  ASSERT_EQ(run_cli("schedule" + quad_pe_args() + " --format json -o " + path("s.json")).status, 0);
  auto ok = run_cli("verify --hardware " + fixture_path("quad_pe_hardware.json") + " --workload " +
                    fixture_path("quad_pe_workload.json") + " --schedule " + path("s.json"));
  EXPECT_EQ(ok.status, 0);
  auto j = nlohmann::json::parse(ok.out);
  EXPECT_TRUE(j["ok"].get<bool>());
  EXPECT_EQ(j["completed_ops"].get<int>(), 5);

  auto late = run_cli("verify --hardware " + fixture_path("quad_pe_hardware.json") + " --workload " +
                      fixture_path("quad_pe_workload.json") + " --schedule " + path("s.json") +
                      " --control-latency 2");
  EXPECT_EQ(late.status, 1);
  EXPECT_NE(late.out.find("late_packet"), std::string::npos);
}

TEST_F(Cli, VerifyAgainstWrongHardware) {
  ASSERT_EQ(run_cli("schedule" + quad_pe_args() + " --format json -o " + path("s.json")).status, 0);
  auto r = run_cli("verify --hardware " + fixture_path("two_bus_hardware.json") + " --schedule " +
                   path("s.json"));
  EXPECT_EQ(r.status, 1);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j["ok"].get<bool>());
  EXPECT_FALSE(j["mismatches"].empty());
}

TEST_F(Cli, CompressAndReconstruct) {
  ASSERT_EQ(run_cli("schedule" + quad_pe_args() + " --format json -o " + path("s.json")).status, 0);
  auto hw = " --hardware " + fixture_path("quad_pe_hardware.json");
  for (int k : {1, 2, 4, 8}) {
    auto prog = path("p" + std::to_string(k) + ".json");
    EXPECT_EQ(run_cli("compress" + hw + " --schedule " + path("s.json") + " --stride " +
                      std::to_string(k) + " -o " + prog)
                  .status,
              0)
        << k;
    EXPECT_EQ(run_cli("reconstruct" + hw + " --program " + prog + " --against " + path("s.json"))
                  .status,
              0)
        << k;
  }
  // Without green_1 (replaced by a far slower link) the program cannot replay.
  auto j = nlohmann::json::parse(testing::read_fixture("quad_pe_hardware.json"));
  for (auto& w : j["wires"]) {
    if (w["name"] == "green_1") {
      w["name"] = "slow_1";
      w["delay"] = 30;
    }
  }
  auto cut = file("cut.json", j.dump());
  EXPECT_EQ(run_cli("reconstruct --hardware " + cut + " --program " + path("p4.json")).status, 1);
}

TEST_F(Cli, CompareReductionTrees) {
  auto r = run_cli("compare --hardware " + fixture_path("adder_tree_plain.json") + " --hardware-b " +
                   fixture_path("adder_tree_augmented.json") + " --workload " +
                   fixture_path("adder_tree_workload.json") + " --seeds " +
                   fixture_path("adder_tree_seeds.json") + " --format json");
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["delta_makespan"].get<int>(), -1);
  EXPECT_TRUE(j["exclusive_wire_utilization"].contains("augmented_link"));
  EXPECT_EQ(j["exclusive_wire_utilization"]["augmented_link"]["side"], "b");
}

TEST_F(Cli, CompareIdenticalIsZero) {
  auto r = run_cli("compare --hardware " + fixture_path("quad_pe_hardware.json") + " --hardware-b " +
                   fixture_path("quad_pe_hardware.json") + " --workload " +
                   fixture_path("quad_pe_workload.json") + " --seeds " +
                   fixture_path("quad_pe_seeds.json") + " --format json");
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["delta_makespan"].get<int>(), 0);
  EXPECT_EQ(j["delta_energy"].get<double>(), 0.0);
  EXPECT_TRUE(j["exclusive_wire_utilization"].empty());
}

TEST_F(Cli, CompareOneSideInfeasible) {
  auto r = run_cli("compare --hardware " + fixture_path("quad_pe_hardware.json") + " --hardware-b " +
                   rushed_hardware() + " --workload " + fixture_path("quad_pe_workload.json") +
                   " --seeds " + fixture_path("quad_pe_seeds.json") + " --format json");
  EXPECT_EQ(r.status, 1);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["a"]["ok"].get<bool>());
  EXPECT_FALSE(j["b"]["ok"].get<bool>());
  EXPECT_FALSE(j.contains("delta_makespan"));
}

}  // namespace
}  // namespace dtt
