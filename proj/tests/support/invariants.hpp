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

#pragma once

#include <string>
#include <vector>

#include "dtt/pipeline.hpp"
#include "fuzz.hpp"

namespace dtt::testing {

/// Checks one scheduled instance; returns a line per broken invariant.
inline std::vector<std::string> check_invariants(const PipelineInstance& inst,
                                                 const PipelineResult& r) {
  std::vector<std::string> bad;
  const auto& g = *inst.graph;
  for (auto& p : r.state.audit()) bad.push_back("audit: " + p);
  for (auto& p : audit_lanes(r.placements, inst.ops, g)) bad.push_back("lanes: " + p);

  // Placing determinism, and whole-schedule determinism.
  auto again = run_pipeline(inst.graph, inst.ops, inst.memory);
  if (again.placements != r.placements) bad.push_back("placing is not deterministic");
  if (!again.state.same_schedule(r.state)) bad.push_back("schedule is not deterministic");

  // Affinity never drops when one more input is already cached.
  for (const auto& pl : r.placements) {
    const auto& op = inst.ops[pl.op_index];
    for (const auto& actor : g.actors()) {
      ActorRuntimeState s{actor.name, 0, actor.lane_count, {}, {}};
      for (const auto& prev : r.placements) {
        if (prev.op_index >= pl.op_index) break;
        if (prev.actor != actor.name) continue;
        for (DatumId d : inst.ops[prev.op_index].inputs) s.cached.insert(d);
      }
      auto base = affinity(s, op);
      for (DatumId d : op.inputs) {
        auto more = s;
        more.cached.insert(d);
        if (affinity(more, op) < base) bad.push_back("affinity decreased");
      }
    }
  }

  // Paths chain: every step starts where the previous one ended and the
  // last point is exactly the requested destination.
  for (const auto& p : r.state.paths()) {
    SpaceTimePoint at = p.origin;
    for (const auto& st : p.steps) {
      if (st.launch != at.cycle) bad.push_back("path step launches off its point");
      if (st.is_wait()) {
        at.cycle += 1;
        continue;
      }
      const auto& w = g.wire(st.wire);
      if (w.src != at.node) bad.push_back("path step leaves from the wrong node");
      at = {w.dst, at.cycle + w.delay};
    }
    if (at != p.destination) bad.push_back("path does not end at its destination");
  }
  for (const auto& pl : r.placements) {
    const auto& in = g.actor(pl.actor).input_node;
    for (DatumId d : inst.ops[pl.op_index].distinct_inputs()) {
      if (!r.state.holds(g.node_index(in), d, pl.arrival_cycle)) {
        bad.push_back("input " + std::to_string(d) + " missing at placement");
      }
    }
  }

  // The independent replay must agree that the schedule is sound.
  auto report = verify_state(r.state, inst.ops);
  if (!report.ok()) bad.push_back("simulator: " + report.violations.front().subject);
  if (report.completed_ops != static_cast<int>(r.placements.size())) {
    bad.push_back("simulator completed fewer operations than were placed");
  }
  return bad;
}

}  // namespace dtt::testing
