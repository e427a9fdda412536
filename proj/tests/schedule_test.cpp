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

#include <json.hpp>

#include "dtt/schedule.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace dtt {
namespace {

TEST(Stats, QuadPeEnergyMatchesRecount) {
  auto r = testing::run(testing::scenario("quad_pe"));
  auto want = testing::classify_energy(testing::golden_rows("quad_pe_movements_golden.csv"),
                                       10 * kCostScale, 2 * kCostScale);
  EXPECT_EQ(r.stats.energy_units, want);
  EXPECT_DOUBLE_EQ(r.stats.total_energy, 178.0);
  EXPECT_EQ(r.stats.makespan, 29);  // last dot issued at 28, one cycle long
}

TEST(Stats, EmptySchedule) {
  auto g = testing::hardware("quad_pe_hardware.json");
  auto s = compute_stats(*g, {}, {}, {});
  EXPECT_EQ(s.energy_units, 0);
  EXPECT_EQ(s.makespan, 0);
  ASSERT_EQ(s.per_wire_utilization.size(), g->wires().size());
  for (const auto& [w, u] : s.per_wire_utilization) EXPECT_EQ(u, 0.0) << w;
}

TEST(Stats, FullyBusyWire) {
  auto g = testing::hardware("two_bus_hardware.json");
  std::vector<Movement> m;
  for (Cycle c = 0; c < 6; ++c) m.push_back({c, "SRAM", c, "Reg", c + 1, "bus0"});
  auto s = compute_stats(*g, m, {}, {});
  EXPECT_EQ(s.makespan, 6);
  EXPECT_DOUBLE_EQ(s.per_wire_utilization.at("bus0"), 1.0);
  EXPECT_DOUBLE_EQ(s.per_wire_utilization.at("bus1"), 0.0);
  EXPECT_EQ(s.energy_units, 6 * kCostScale);
}

TEST(Stats, HalfBusyWire) {
  auto g = testing::hardware("two_bus_hardware.json");
  std::vector<Movement> m{{0, "SRAM", 0, "Reg", 1, "bus0"}, {1, "SRAM", 0, "Reg", 1, "bus0"},
                          {1, "Reg", 3, "PE", 4, "bus1"}};
  auto s = compute_stats(*g, m, {}, {});
  EXPECT_EQ(s.makespan, 4);
  EXPECT_DOUBLE_EQ(s.per_wire_utilization.at("bus0"), 0.25);
  EXPECT_DOUBLE_EQ(s.per_wire_utilization.at("bus1"), 0.25);
}

TEST(Stats, JsonShape) {
  auto r = testing::run(testing::scenario("quad_pe"));
  auto j = nlohmann::json::parse(stats_to_json(r.stats));
  EXPECT_EQ(j["total_energy"].get<double>(), 178.0);
  EXPECT_EQ(j["per_wire_utilization"].size(), r.state.graph().wires().size());
}

TEST(Document, RoundTripRebuildsSameState) {
  for (const char* prefix : {"quad_pe", "adder_tree", "hetero"}) {
    auto sc = prefix == std::string("adder_tree") ? testing::scenario("adder_tree", "adder_tree_augmented.json")
                                            : testing::scenario(prefix);
    auto r = testing::run(sc);
    auto text = serialize_schedule(document_of(r.state), &r.stats);
    auto doc = parse_schedule(text);
    EXPECT_EQ(doc.movements, r.state.movements()) << prefix;
    EXPECT_EQ(doc.placements, r.state.placements()) << prefix;
    auto rebuilt = rebuild_schedule(doc, sc.graph);
    EXPECT_TRUE(rebuilt.same_schedule(r.state)) << prefix;
    EXPECT_EQ(serialize_schedule(document_of(rebuilt), &r.stats), text) << prefix;
  }
}

TEST(Document, TamperedMovementsAreRejected) {
  auto sc = testing::scenario("quad_pe");
  auto r = testing::run(sc);
  auto doc = document_of(r.state);
  doc.movements.pop_back();
  EXPECT_THROW(rebuild_schedule(doc, sc.graph), Error);
}

TEST(Document, MalformedIsParseError) {
  EXPECT_THROW(parse_schedule("[]"), ParseError);
  EXPECT_THROW(parse_schedule("{\"horizon\": 3"), ParseError);
}

TEST(Tables, MovementsCsvMatchesGoldenFile) {
  auto r = testing::run(testing::scenario("quad_pe"));
  EXPECT_EQ(movements_to_csv(r.state.movements()),
            testing::read_fixture("quad_pe_movements_golden.csv"));
}

TEST(Tables, PlacementsCsv) {
  auto sc = testing::scenario("quad_pe");
  auto r = testing::run(sc);
  auto csv = placements_to_csv(r.placements, sc.ops, *sc.graph);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "op_index,actor,cycle,node,data");
  EXPECT_NE(csv.find("3,PE_2,8,PE_2_input,4 5\n"), std::string::npos) << csv;
  EXPECT_NE(csv.find("4,PE_0,28,PE_0_input,100 101 102 103\n"), std::string::npos) << csv;
}

TEST(Tables, GanttMentionsEveryNode) {
  auto r = testing::run(testing::scenario("quad_pe"));
  auto chart = render_gantt(r.state, r.stats.makespan);
  for (const auto& n : r.state.graph().nodes()) {
    EXPECT_NE(chart.find(n.name), std::string::npos) << n.name;
  }
}

}  // namespace
}  // namespace dtt
