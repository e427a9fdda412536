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

#include "dtt/pipeline.hpp"

#include <algorithm>

#include "dtt/routing.hpp"

namespace dtt {

PipelineResult run_pipeline(std::shared_ptr<const HardwareGraph> graph,
                            const std::vector<Operation>& ops, const InitialMemory& memory,
                            const PipelineConfig& config) {
  validate_workload(ops);
  auto placements = config.filtered
                        ? filtered_placing(ops, graph->actors(), *graph, config.placing)
                        : first_best_fit(ops, graph->actors(), *graph, config.placing);

  Cycle horizon = 0;
  for (const auto& p : placements) {
    horizon = std::max(horizon, p.arrival_cycle + graph->actor(p.actor).op_delay);
  }
  for (const auto& op : ops) horizon = std::max(horizon, op.offset);
  for (const auto& f : memory.facts) horizon = std::max(horizon, f.until.value_or(f.cycle));
  horizon = config.horizon.value_or(horizon + config.drain_margin);

  ScheduleState state(graph, horizon);
  state.set_wait_epsilon(config.wait_epsilon);
  for (const auto& [d, s] : memory.sizes) state.set_datum_size(d, s);
  for (const auto& f : memory.facts) apply_fact(state, f);
  register_results(state, placements, ops);
  route_all(state, placements, ops);
  route_reductions(state, ops);
  auto stats = compute_stats(state);
  return {std::move(placements), std::move(state), std::move(stats)};
}

SimReport verify_state(const ScheduleState& state, const std::vector<Operation>& ops,
                       Cycle control_latency, Cycle slack) {
  auto plan = emit_control_packets(state.movements(), control_latency, slack);
  SimInputs in;
  in.placements = state.placements();
  in.workload = ops;
  in.seeds = state.memory_facts();
  in.reductions = state.reductions();
  in.sizes = state.datum_sizes();
  return simulate(state.graph(), plan.packets, in);
}

}  // namespace dtt
