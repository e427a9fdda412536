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

#include "dtt/routing.hpp"
#include "dtt/schedule.hpp"
#include "fixtures.hpp"

namespace dtt {
namespace {

std::size_t waypoint_count(const WaypointProgram& p) {
  std::size_t n = 0;
  for (const auto& r : p.requests) n += r.waypoints.size();
  return n;
}

TEST(Waypoints, TwoBusStrideTwo) {
  ScheduleState s(testing::hardware("two_bus_hardware.json"), 10);
  for (const auto& f : parse_initial_memory(testing::read_fixture("two_bus_seeds.json")).facts) {
    apply_fact(s, f);
  }
  reserve(s, route_datum(s, 0, {"PE", 3}));
  reserve(s, route_datum(s, 1, {"PE", 3}));
  auto prog = compress_waypoints(s, s.paths(), 2);
  ASSERT_EQ(prog.requests.size(), 2u);
  EXPECT_EQ(prog.requests[0].waypoints,
            (std::vector<SpaceTimePoint>{{"SRAM", 0}, {"PE", 2}, {"PE", 3}}));
  EXPECT_EQ(prog.requests[1].waypoints,
            (std::vector<SpaceTimePoint>{{"SRAM", 0}, {"Reg", 2}, {"PE", 3}}));
  auto back = reconstruct(prog, s.shared_graph());
  EXPECT_EQ(back.movements(), s.movements());
  EXPECT_TRUE(back.same_schedule(s));
}

TEST(Waypoints, StrideOneKeepsEveryPoint) {
  auto r = testing::run(testing::scenario("quad_pe"));
  auto prog = compress_waypoints(r.state, r.state.paths(), 1);
  const auto& g = r.state.graph();
  ASSERT_EQ(prog.requests.size(), r.state.paths().size());
  for (std::size_t i = 0; i < prog.requests.size(); ++i) {
    EXPECT_EQ(prog.requests[i].waypoints, r.state.paths()[i].points(g));
  }
}

TEST(Waypoints, QuadPeRoundTripAllStrides) {
  auto sc = testing::scenario("quad_pe");
  auto r = testing::run(sc);
  for (int k : {1, 2, 3, 4, 8, 64}) {
    auto prog = compress_waypoints(r.state, r.state.paths(), k);
    auto parsed = parse_program(serialize_program(prog));
    EXPECT_EQ(parsed, prog) << k;
    auto back = reconstruct(parsed, sc.graph);
    EXPECT_EQ(first_difference(back.movements(), r.state.movements()), std::nullopt) << k;
    EXPECT_TRUE(back.same_schedule(r.state)) << k;
  }
}

TEST(Waypoints, ProgramShrinksWithStride) {
  auto r = testing::run(testing::scenario("quad_pe"));
  std::size_t last = SIZE_MAX;
  for (int k : {1, 2, 4, 8, 16}) {
    auto n = waypoint_count(compress_waypoints(r.state, r.state.paths(), k));
    EXPECT_LE(n, last) << k;
    last = n;
  }
}

TEST(Waypoints, ReductionsSurviveRoundTrip) {
  auto sc = testing::scenario("adder_tree", "adder_tree_augmented.json");
  auto r = testing::run(sc);
  auto back = reconstruct(compress_waypoints(r.state, r.state.paths(), 4), sc.graph);
  EXPECT_TRUE(back.same_schedule(r.state));
}

TEST(Waypoints, MissingWireMakesLegInfeasible) {
  auto sc = testing::scenario("quad_pe");
  auto r = testing::run(sc);
  auto prog = compress_waypoints(r.state, r.state.paths(), 8);
  // green_1 is a bridge; replace it by a link far too slow for any leg.
  auto wires = sc.graph->wires();
  for (auto& w : wires) {
    if (w.name == "green_1") {
      w.name = "slow_1";
      w.delay = 30;
    }
  }
  auto slow = std::make_shared<const HardwareGraph>(sc.graph->nodes(), wires, sc.graph->actors());
  EXPECT_THROW(reconstruct(prog, slow), TimingFault);
}

TEST(Waypoints, BadStride) {
  auto r = testing::run(testing::scenario("quad_pe"));
  EXPECT_THROW(compress_waypoints(r.state, r.state.paths(), 0), ValidationError);
}

TEST(Waypoints, FirstDifference) {
  std::vector<Movement> a{{1, "A", 0, "B", 1, "w"}, {2, "A", 0, "B", 1, "w"}};
  auto b = a;
  EXPECT_EQ(first_difference(a, b), std::nullopt);
  b[1].end_cycle = 2;
  EXPECT_EQ(first_difference(a, b), 1u);
  b.pop_back();
  EXPECT_EQ(first_difference(a, b), 1u);
}

}  // namespace
}  // namespace dtt
