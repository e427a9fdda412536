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

#include "dtt/placing.hpp"
#include "dtt/workload.hpp"
#include "fixtures.hpp"

namespace dtt {
namespace {

Operation dot(std::vector<DatumId> in, DatumId out, Cycle offset = 0) {
  return Operation{"dot", std::move(in), {out}, offset, {}};
}

// Three two-lane actors hanging off one memory.
HardwareGraph three_actors(Cycle cooldown) {
  std::vector<NodeSpec> nodes{{"M", std::nullopt, NodeKind::memory}};
  std::vector<WireSpec> wires;
  std::vector<ActorSpec> actors;
  for (int i = 0; i < 3; ++i) {
    std::string b = "P" + std::to_string(i);
    nodes.push_back({b + "_in", 8, NodeKind::actor_input});
    nodes.push_back({b + "_out", 8, NodeKind::actor_output});
    wires.push_back({"to_" + b, "M", b + "_in", 2, kCostScale, 1});
    wires.push_back({"from_" + b, b + "_out", "M", 2, kCostScale, 1});
    ActorSpec a;
    a.name = b;
    a.input_node = b + "_in";
    a.output_node = b + "_out";
    a.capabilities = {"dot"};
    a.cooldown = cooldown;
    a.op_delay = 1;
    a.distribution_latency = 0;
    a.buffer_size = 4;
    a.lane_count = 2;
    actors.push_back(a);
  }
  return HardwareGraph(nodes, wires, actors);
}

TEST(Affinity, CountsDistinctCachedInputs) {
  ActorRuntimeState a{"P", 0, 2, {0, 1, 2}, {}};
  EXPECT_EQ(affinity(a, dot({1, 2, 3, 4}, 9)), 2u);
  EXPECT_EQ(affinity(a, dot({2, 2}, 9)), 1u);
  EXPECT_EQ(affinity(a, dot({7, 8}, 9)), 0u);
  a.cached.insert(7);
  EXPECT_EQ(affinity(a, dot({7, 8}, 9)), 1u);
}

TEST(Placing, QuadPePlacements) {
  auto sc = testing::scenario("quad_pe");
  auto p = first_best_fit(sc.ops, sc.graph->actors(), *sc.graph);
  std::vector<Placement> want{{0, "PE_0", 8}, {1, "PE_1", 8}, {2, "PE_2", 8}, {3, "PE_2", 8},
                              {4, "PE_0", 28}};
  EXPECT_EQ(p, want);
  // Every actor can do "dot": the filtered variant must agree.
  EXPECT_EQ(filtered_placing(sc.ops, sc.graph->actors(), *sc.graph), want);
  EXPECT_TRUE(audit_lanes(p, sc.ops, *sc.graph).empty());
}

TEST(Placing, CooldownHandTrace) {
  // Six one-lane dots fill the three actors pairwise at clock 0; each actor
  // is then busy until clock 3, so the seventh dot waits and goes to P0.
  auto g = three_actors(3);
  std::vector<Operation> ops;
  for (int i = 0; i < 7; ++i) ops.push_back(dot({2 * i, 2 * i + 1}, 100 + i));
  auto p = first_best_fit(ops, g.actors(), g);
  std::vector<Placement> want{{0, "P0", 0}, {1, "P0", 0}, {2, "P1", 0}, {3, "P1", 0},
                              {4, "P2", 0}, {5, "P2", 0}, {6, "P0", 3}};
  EXPECT_EQ(p, want);
  EXPECT_TRUE(audit_lanes(p, ops, g).empty());
}

TEST(Placing, AffinityWinsOverIndex) {
  auto g = three_actors(0);
  std::vector<Operation> ops{dot({0, 1, 2, 3}, 100), dot({4, 5, 6, 7}, 101),
                             dot({6, 7}, 102, 2)};
  auto p = first_best_fit(ops, g.actors(), g);
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p[0].actor, "P0");
  EXPECT_EQ(p[1].actor, "P1");  // P0 has no free lane at clock 0
  EXPECT_EQ(p[2].actor, "P1");  // all free again; P1 caches 6 and 7
}

TEST(Placing, StarvationBound) {
  auto g = three_actors(3);
  std::vector<Operation> ops;
  for (int i = 0; i < 7; ++i) ops.push_back(dot({2 * i, 2 * i + 1}, 100 + i));
  PlacingOptions opt;
  opt.starvation_bound = 1;
  EXPECT_THROW(first_best_fit(ops, g.actors(), g, opt), PlacingError);
}

TEST(Placing, TooWideOperation) {
  auto g = testing::hardware("two_bus_hardware.json");
  std::vector<Operation> ops{Operation{"mul", {0, 1}, {2}, 0, {}},
                             Operation{"dot", {0, 1, 2, 3}, {9}, 0, {}}};
  try {
    filtered_placing(ops, g->actors(), *g);
    FAIL() << "expected PlacingError";
  } catch (const PlacingError& e) {
    EXPECT_NE(std::string(e.what()).find("operation 1"), std::string::npos);
  }
}

TEST(Placing, HeterogeneousFilter) {
  auto sc = testing::scenario("hetero");
  auto p = filtered_placing(sc.ops, sc.graph->actors(), *sc.graph);
  ASSERT_EQ(p.size(), sc.ops.size());
  for (const auto& pl : p) {
    if (sc.ops[pl.op_index].opcode == "custom") {
      EXPECT_EQ(pl.actor, "CPU");
    } else {
      EXPECT_TRUE(sc.graph->actor(pl.actor).can_perform("dot"));
    }
  }
  EXPECT_THROW(first_best_fit(sc.ops, sc.graph->actors(), *sc.graph), PlacingError);
}

TEST(Placing, NoCapableActorNamesOpcode) {
  auto sc = testing::scenario("hetero");
  std::vector<Operation> ops{Operation{"fft", {0}, {300}, 0, {}}};
  try {
    filtered_placing(ops, sc.graph->actors(), *sc.graph);
    FAIL() << "expected PlacingError";
  } catch (const PlacingError& e) {
    EXPECT_NE(std::string(e.what()).find("\"fft\""), std::string::npos);
  }
}

TEST(Placing, Deterministic) {
  auto sc = testing::scenario("hetero");
  auto a = filtered_placing(sc.ops, sc.graph->actors(), *sc.graph);
  auto b = filtered_placing(sc.ops, sc.graph->actors(), *sc.graph);
  EXPECT_EQ(a, b);
}

TEST(Placing, RegisterResults) {
  auto sc = testing::scenario("quad_pe");
  auto p = first_best_fit(sc.ops, sc.graph->actors(), *sc.graph);
  ScheduleState s(sc.graph, 60);
  register_results(s, p, sc.ops);
  auto out0 = s.graph().node_index("PE_0_output");
  EXPECT_FALSE(s.holds(out0, 100, 8));
  EXPECT_TRUE(s.holds(out0, 100, 9));
  EXPECT_TRUE(s.holds(out0, 104, 29));
  ASSERT_EQ(s.memory_facts().size(), 5u);
  EXPECT_TRUE(s.memory_facts().front().produced);
}

TEST(Placing, LaneAuditCatchesOverlap) {
  auto g = three_actors(0);
  std::vector<Operation> ops{dot({0, 1, 2, 3}, 100), dot({4, 5}, 101)};
  std::vector<Placement> bad{{0, "P0", 0}, {1, "P0", 0}};
  EXPECT_EQ(audit_lanes(bad, ops, g).size(), 1u);
}

}  // namespace
}  // namespace dtt
