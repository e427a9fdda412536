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

#include <random>

#include "fuzz.hpp"
#include "invariants.hpp"

namespace dtt {
namespace {

TEST(Properties, FuzzedPipelines) {
  std::mt19937 rng(7);
  int feasible = 0;
  int tries = 0;
  while (feasible < 60 && tries < 400) {
    ++tries;
    auto inst = testing::random_pipeline_instance(rng);
    std::optional<PipelineResult> r;
    try {
      r = run_pipeline(inst.graph, inst.ops, inst.memory);
    } catch (const TimingFault&) {
      continue;
    } catch (const CapacityError&) {
      continue;
    }
    ++feasible;
    for (const auto& line : testing::check_invariants(inst, *r)) {
      ADD_FAILURE() << "instance " << tries << ": " << line;
    }
  }
  EXPECT_EQ(feasible, 60);
}

TEST(Properties, FuzzedRoundTrips) {
  std::mt19937 rng(11);
  int done = 0;
  while (done < 15) {
    auto inst = testing::random_pipeline_instance(rng);
    try {
      auto r = run_pipeline(inst.graph, inst.ops, inst.memory);
      for (int k : {1, 2, 4, 8}) {
        auto back = reconstruct(compress_waypoints(r.state, r.state.paths(), k), inst.graph);
        EXPECT_TRUE(back.same_schedule(r.state)) << "stride " << k;
      }
      ++done;
    } catch (const TimingFault&) {
    } catch (const CapacityError&) {
    }
  }
}

}  // namespace
}  // namespace dtt
